#include <cstdio>
int main() { std::puts("linkhom: placeholder"); return 0; }
