#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "streamcut/acceptance.hpp"

int main(int argc, char** argv) {
  streamcut::AcceptOptions opts;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::stoull(argv[++i]);
    } else {
      opts.only.push_back(std::stoi(arg));
    }
  }
  opts.progress = [](const std::string& line) { std::cerr << "  " << line << '\n'; };
  bool all = true;
  for (int id = 1; id <= streamcut::kCriteriaCount; ++id) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) {
      continue;
    }
    auto r = streamcut::run_criterion(id, opts);
    std::cout << streamcut::format_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
