#ifndef RIGID_ERROR_HPP
#define RIGID_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rigid {

enum class ErrorKind {
  parse,              // malformed input file / CLI argument
  not_laman,          // graph fails the minimal-rigidity count test
  not_type1,          // graph is Laman but not 1-step constructible
  genericity,         // random labelling turned out degenerate
  degree_too_large,   // permutation degree / element count over cap
  factorization,      // squarefree part not resolvable within bound
  zero_radicand,      // adjoining sqrt(0)
  division_by_zero,
  internal,           // invariant violated; indicates a bug or bad tower
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Process exit codes, one per error class (documented in README).
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return 2;
    case ErrorKind::not_laman: return 3;
    case ErrorKind::not_type1: return 4;
    case ErrorKind::genericity: return 5;
    case ErrorKind::degree_too_large: return 6;
    case ErrorKind::factorization: return 7;
    case ErrorKind::zero_radicand: return 8;
    case ErrorKind::division_by_zero: return 9;
    case ErrorKind::internal: return 10;
  }
  return 10;
}

}  // namespace rigid

#endif
