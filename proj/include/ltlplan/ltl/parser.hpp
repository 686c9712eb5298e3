#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltlplan/ltl/formula.hpp"

namespace ltlplan::ltl {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected,
             std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string found_;
};

// Concrete syntax, tightest binding first:
//
//   unary     !f   X f   F f   G f   GF f   FG f   F[a,b] f   G[a,b] f
//   until     f U g                 (right-associative)
//   and       f & g & ...
//   or        f | g | ...
//   implies   f -> g                (right-associative)
//   iff       f <-> g               (left-associative)
//
// Atoms are [A-Za-z_][A-Za-z0-9_]* excluding the keywords X F G U GF FG true
// false. `false` parses as !true. Atoms are not resolved here.
Formula parse(std::string_view text);

}  // namespace ltlplan::ltl
