// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
// Usage: acceptance <path to the rdperm CLI>

#include <array>
#include <cstdio>
#include <iostream>
#include <string>

#include "rdperm/verification.hpp"

namespace {

// stdout of a shell command and its exit status
std::pair<std::string, int> capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {out, -1};
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  return {out, pclose(pipe)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <rdperm-cli>\n";
    return 2;
  }
  bool all = true;
  for (const auto& r : rdperm::run_all_criteria()) {
    all = all && r.pass;
    std::cout << r.line() << '\n' << std::flush;
  }

  const std::string command = std::string("'") + argv[1] + "' verify 2>/dev/null";
  const auto [first, status1] = capture(command);
  const auto [second, status2] = capture(command);
  std::size_t lines = 0;
  for (char c : first) lines += c == '\n';
  const bool same = first == second && status1 == status2 && lines == rdperm::kCriteria;
  all = all && same;
  std::cout << "criterion 9 " << (same ? "PASS" : "FAIL")
            << " reproducibility: two runs of verify " << (first == second ? "byte-identical" : "DIFFER") << " ("
            << first.size() << " bytes, " << lines << " lines, equal exit status " << (status1 == status2 ? "yes" : "no")
            << ")\n";
  return all ? 0 : 1;
}
