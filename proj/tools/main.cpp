#include <cstdio>

int main() {
  std::puts("epsum: CLI not wired up yet");
  return 1;
}
