// placeholder main; subcommands land after the library settles
#include <cstdio>
int main() { std::puts("sympcurve"); return 0; }
