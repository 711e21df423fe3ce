#include <iostream>

int main(int argc, char** argv) {
  std::cerr << "wecflow: CLI not wired yet\n";
  return 3;
}
