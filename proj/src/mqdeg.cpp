#include "rigid/mqdeg.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "rigid/error.hpp"

namespace rigid {

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  static std::map<std::uint64_t, std::vector<std::uint64_t>> cache;
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<bool> sieve(bound + 1, true);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (!sieve[p]) continue;
    primes.push_back(p);
    for (std::uint64_t q = p * p; q <= bound; q += p) sieve[q] = false;
  }
  cache[bound] = primes;
  return primes;
}

}  // namespace

SquarefreePart squarefree_part(const Rat& q, std::uint64_t bound) {
  if (sgn(q) == 0) throw Error(ErrorKind::parse, "squarefree_part of zero");

  SquarefreePart out;
  out.sign = sgn(q);
  // p/q and p*q lie in the same square class, so a single integer suffices.
  Int m = abs(q.get_num() * q.get_den());

  for (std::uint64_t p : primes_up_to(bound)) {
    if (m == 1) break;
    if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
    unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Int(p).get_mpz_t());
    if (e % 2 == 1) out.primes.push_back(Int(p));
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      // even part, contributes nothing
    } else if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
      out.primes.push_back(m);
    } else {
      throw Error(ErrorKind::factorization,
                  "cofactor " + m.get_str() + " is composite and exceeds the factor bound");
    }
  }
  std::sort(out.primes.begin(), out.primes.end());
  for (const Int& p : out.primes) out.squarefree *= p;
  return out;
}

MqRankResult mq_degree_gf2(const std::vector<Rat>& a, std::uint64_t bound) {
  MqRankResult res;
  res.k = static_cast<int>(a.size());

  std::vector<SquarefreePart> parts;
  parts.reserve(a.size());
  std::vector<Int> basis;  // all primes seen, ascending
  for (const Rat& q : a) {
    parts.push_back(squarefree_part(q, bound));
    for (const Int& p : parts.back().primes) basis.push_back(p);
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  // Row s: bit 0 = sign, bit (1+i) = parity of prime basis[i].
  const std::size_t width = basis.size() + 1;
  const std::size_t words = (width + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& part : parts) {
    std::vector<std::uint64_t> row(words, 0);
    if (part.sign < 0) row[0] |= 1;
    for (const Int& p : part.primes) {
      std::size_t i = 1 + (std::lower_bound(basis.begin(), basis.end(), p) - basis.begin());
      row[i / 64] |= std::uint64_t(1) << (i % 64);
    }
    rows.push_back(std::move(row));
  }

  // Gaussian elimination over GF(2).
  int rank = 0;
  for (std::size_t col = 0; col < width && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t word = col / 64;
    std::uint64_t bit = std::uint64_t(1) << (col % 64);
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][word] & bit) {
        pivot = r;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && (rows[r][word] & bit))
        for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
    }
    ++rank;
  }

  res.rank = rank;
  mpz_ui_pow_ui(res.degree.get_mpz_t(), 2, rank);
  return res;
}

MqBruteResult mq_degree_bruteforce(const std::vector<Rat>& a) {
  MqBruteResult res;
  res.k = static_cast<int>(a.size());
  if (res.k > 20)
    throw Error(ErrorKind::degree_too_large, "subset-product brute force capped at k = 20");
  for (const Rat& q : a)
    if (sgn(q) == 0) throw Error(ErrorKind::parse, "zero entry");

  const std::uint64_t total = std::uint64_t(1) << res.k;
  std::uint64_t squares = 0;
  std::uint64_t best = 0;  // best witness mask, 0 = none
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Rat prod(1);
    for (int s = 0; s < res.k; ++s)
      if (mask >> s & 1) prod *= a[s];
    if (!is_perfect_square(prod)) continue;
    ++squares;
    if (mask != 0) {
      if (best == 0 || std::popcount(mask) < std::popcount(best) ||
          (std::popcount(mask) == std::popcount(best) && mask < best))
        best = mask;
    }
  }
  // The square subsets form a GF(2) subspace, so the count divides 2^k.
  Int deg;
  mpz_ui_pow_ui(deg.get_mpz_t(), 2, res.k);
  mpz_divexact(res.degree.get_mpz_t(), deg.get_mpz_t(), Int(squares).get_mpz_t());
  if (best != 0) {
    std::vector<int> witness;
    for (int s = 0; s < res.k; ++s)
      if (best >> s & 1) witness.push_back(s);
    res.witness = std::move(witness);
  }
  return res;
}

Int multiquadratic_degree(const std::vector<Rat>& a, std::uint64_t bound) {
  MqRankResult gf2 = mq_degree_gf2(a, bound);
  if (a.size() <= 12) {
    MqBruteResult brute = mq_degree_bruteforce(a);
    if (brute.degree != gf2.degree)
      throw Error(ErrorKind::internal,
                  "GF(2) rank and subset-product routes disagree: " + gf2.degree.get_str() +
                      " vs " + brute.degree.get_str());
  }
  return gf2.degree;
}

}  // namespace rigid
