#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctcompand/core.hpp"

namespace ctc {

/// Raised by parse_params; what() lists every problem found, one per line.
class ParamFileError : public ParamError {
 public:
  explicit ParamFileError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Flat "key = value" text, '#' comments, arrays as comma-separated lists.
/// With comments on, each key is preceded by a note on the stage it controls.
std::string dump_params(const CompandParams& p, bool with_comments = true);

/// Every key must be present exactly once. Values are not range-checked here;
/// call validate_params on the result.
CompandParams parse_params(std::string_view text);

CompandParams load_params(const std::string& path);

/// 64-bit FNV-1a over the canonical dump, as 16 hex digits.
std::string param_hash(const CompandParams& p);

}  // namespace ctc
