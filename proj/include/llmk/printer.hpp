#pragma once

#include <string>

#include "llmk/program.hpp"
#include "llmk/syntax.hpp"

namespace llmk {

// Surface-syntax rendering. Output re-parses to an alpha-equivalent tree.
std::string pretty_print(const MkTypePtr& type);
std::string pretty_print(const LlTypePtr& type);
std::string pretty_print(const MkTermPtr& term);
std::string pretty_print(const LlTermPtr& term);
std::string pretty_print(const Program& program);

}  // namespace llmk
