#include <cstdio>

int main() {
  std::puts("eegdem placeholder");
  return 0;
}
