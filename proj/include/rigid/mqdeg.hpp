#ifndef RIGID_MQDEG_HPP
#define RIGID_MQDEG_HPP

#include <optional>
#include <vector>

#include "rigid/rational.hpp"

namespace rigid {

inline constexpr std::uint64_t kDefaultFactorBound = 100000;

// q = sign * squarefree * (square). `primes` is the factorization of the
// squarefree part (ascending); the last entry may exceed the trial-division
// bound when it is a certified prime cofactor.
struct SquarefreePart {
  int sign = 1;
  Int squarefree{1};
  std::vector<Int> primes;
};

// Throws Error(parse) on q = 0 and Error(factorization) when a composite
// cofactor above bound^2 survives trial division.
SquarefreePart squarefree_part(const Rat& q, std::uint64_t bound = kDefaultFactorBound);

// Degree of Q(sqrt(a_1), ..., sqrt(a_k)) over Q via the GF(2) rank of the
// exponent-parity vectors (sign bit plus one bit per prime).
struct MqRankResult {
  int k = 0;
  int rank = 0;
  Int degree{1};  // 2^rank
};
MqRankResult mq_degree_gf2(const std::vector<Rat>& a,
                           std::uint64_t bound = kDefaultFactorBound);

// Independent route: counts subsets whose product is a perfect square in Q
// (degree = 2^k / count). Also reports a smallest nonempty subset with a
// square product when one exists. Guarded to k <= 20.
struct MqBruteResult {
  int k = 0;
  Int degree{1};
  std::optional<std::vector<int>> witness;  // 0-based indices into a
};
MqBruteResult mq_degree_bruteforce(const std::vector<Rat>& a);

// The public operation: GF(2) route, cross-checked against the brute force
// for k <= 12 (mismatch raises Error(internal)).
Int multiquadratic_degree(const std::vector<Rat>& a,
                          std::uint64_t bound = kDefaultFactorBound);

}  // namespace rigid

#endif
