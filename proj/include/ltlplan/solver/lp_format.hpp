#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ltlplan/solver/model_ir.hpp"

namespace ltlplan::solver {

/// Linear: rows must all be linear. Quadratic: quadratic rows are written in
/// bracket form for readers that accept QCP input.
enum class LpProfile { Linear, Quadratic };

const char* to_string(LpProfile p);

class LpFormatError : public std::runtime_error {
 public:
  LpFormatError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// CPLEX-style LP text. Every variable is listed in the Bounds section in
/// index order so that reading the file back reproduces the variable order.
void write_lp(const Model& model, std::ostream& out, LpProfile profile,
              const std::string& problem_name = "ltlplan");
void write_lp_file(const Model& model, const std::filesystem::path& path,
                   LpProfile profile, const std::string& problem_name = "ltlplan");

Model read_lp(std::istream& in);
Model read_lp_file(const std::filesystem::path& path);

}  // namespace ltlplan::solver
