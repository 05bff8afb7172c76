#ifndef RIGID_PERM_HPP
#define RIGID_PERM_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rigid {

// Permutation of 0..degree-1, image-table representation.
class Perm {
public:
  Perm() = default;
  explicit Perm(int degree);  // identity
  explicit Perm(std::vector<std::uint16_t> images);

  int degree() const { return static_cast<int>(img_.size()); }
  std::uint16_t operator[](std::size_t x) const { return img_[x]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  long order() const;  // lcm of cycle lengths
  int fixed_points() const;

  // Cycle notation on 1-based points, fixed points omitted: "(1 4 2 3)(5 7 6 8)".
  std::string cycle_string() const;

  auto operator<=>(const Perm&) const = default;

private:
  std::vector<std::uint16_t> img_;
};

// (a * b)(x) = a[b[x]]: apply b first.
Perm compose(const Perm& a, const Perm& b);

// Breadth-first closure of the generated group, data-parallel over frontier
// products with a deterministic merge. Returns nullopt once the element
// count would exceed `cap`; otherwise the elements in discovery order
// (identity first).
std::optional<std::vector<Perm>> close_generators(const std::vector<Perm>& gens,
                                                  int degree, std::size_t cap);

}  // namespace rigid

#endif
