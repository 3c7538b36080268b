#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "llmk/parser.hpp"

namespace llmk::test {

inline std::string program_path(const std::string& name) {
  return std::string(LLMK_PROGRAMS_DIR) + "/" + name;
}

inline Program load_program(const std::string& name) {
  std::ifstream in(program_path(name));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_program(text.str());
}

}  // namespace llmk::test
