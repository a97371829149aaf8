#include "kstab_cli.hpp"

#include <clocale>

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  std::locale::global(std::locale::classic());
  std::vector<std::string> args(argv + 1, argv + argc);
  return kstab::cli::run(args, std::cout, std::cerr);
}
