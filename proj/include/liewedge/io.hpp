#pragma once

// System files, JSON serialisation and figure data.
//
// System file grammar (one statement per line, '#' starts a comment):
//   rep        r3 | qubit | two_qubit
//   drift      MATRIX | NAME
//   control    MATRIX | NAME              (repeatable)
//   lindblad   RATE MATRIX | RATE NAME    (repeatable, quantum carriers)
//   relaxation MATRIX                     (r3)
//   samples N | rounds N | tol X | seed N
// MATRIX is a literal "[a b; c d]" whose entries are reals or complex numbers
// written x+yi, x-yi, yi or i. NAME is a named element: H_x ... E33 for r3,
// a Pauli label such as "z" or "x1" for the quantum carriers (Hamiltonians
// take sigma/2, Lindblad operators take sigma).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "liewedge/lindblad.hpp"
#include "liewedge/matcore.hpp"

namespace liewedge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "liewedge/1";

/// Parse failure with the offending line (1-based) and statement keyword.
class ParseError : public DomainError {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

struct SystemFile {
  ControlSystem system;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> rounds;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

/// Parses and validates; throws ParseError.
SystemFile parse_system(std::string_view text);
/// Reads a file and parses it; unreadable files raise ParseError at line 0.
SystemFile load_system(const std::string& path);
/// Emits matrix literals only, so parse_system(emit_system(f)) is bit-exact.
std::string emit_system(const SystemFile& f);

/// Matrix literal with 17 significant digits; complex-tagged matrices print
/// every entry as x+yi.
std::string format_matrix(const Mat& m);
/// Parses a matrix literal; throws DomainError.
Mat parse_matrix(std::string_view text);

/// {"rows", "cols", "field", "re", "im"} with row-major nested rows; "im" is
/// empty for real matrices.
Json matrix_json(const Mat& m);
Json matrices_json(const std::vector<Mat>& ms);
Json system_json(const ControlSystem& sys);

/// Serialises with floating-point numbers at 17 significant digits and
/// non-finite numbers as null.
std::string dump_json(const Json& j, int indent = 2);

/// "%.17g".
std::string format_double(double x);

}  // namespace liewedge
