// placeholder until the CLI module lands
int main() { return 0; }
