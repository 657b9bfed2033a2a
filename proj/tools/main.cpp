#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return multfree::cli::emit(multfree::cli::dispatch(args));
}
