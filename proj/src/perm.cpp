#include "rigid/perm.hpp"

#include <future>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "rigid/error.hpp"

namespace rigid {

Perm::Perm(int degree) : img_(degree) {
  if (degree < 1 || degree > 65536)
    throw Error(ErrorKind::degree_too_large, "permutation degree out of range");
  std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v])
      throw Error(ErrorKind::internal, "image table is not a permutation");
    seen[v] = true;
  }
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<std::uint16_t> inv(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) inv[img_[x]] = static_cast<std::uint16_t>(x);
  return Perm(std::move(inv));
}

long Perm::order() const {
  std::vector<bool> seen(img_.size(), false);
  long ord = 1;
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x]) continue;
    long len = 0;
    for (std::size_t y = x; !seen[y]; y = img_[y]) {
      seen[y] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

int Perm::fixed_points() const {
  int n = 0;
  for (std::size_t x = 0; x < img_.size(); ++x) n += (img_[x] == x);
  return n;
}

std::string Perm::cycle_string() const {
  std::vector<bool> seen(img_.size(), false);
  std::ostringstream out;
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x] || img_[x] == x) {
      seen[x] = true;
      continue;
    }
    out << '(';
    bool first = true;
    for (std::size_t y = x; !seen[y]; y = img_[y]) {
      seen[y] = true;
      out << (first ? "" : " ") << y + 1;
      first = false;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw Error(ErrorKind::internal, "composing permutations of different degree");
  std::vector<std::uint16_t> img(a.degree());
  for (int x = 0; x < a.degree(); ++x) img[x] = a[b[x]];
  return Perm(std::move(img));
}

namespace {

std::uint64_t hash_images(const std::vector<std::uint16_t>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint16_t x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

// Arena-backed element set: permutations stored once, membership through a
// hash -> indices map. Never iterated, so bucket order cannot leak into
// results.
class PermSet {
public:
  // Returns the element's index and whether it was new.
  std::pair<std::uint32_t, bool> insert(Perm p) {
    std::uint64_t h = hash_images(p.images());
    auto& bucket = by_hash_[h];
    for (std::uint32_t i : bucket)
      if (elems_[i] == p) return {i, false};
    elems_.push_back(std::move(p));
    std::uint32_t idx = static_cast<std::uint32_t>(elems_.size() - 1);
    bucket.push_back(idx);
    return {idx, true};
  }

  std::size_t size() const { return elems_.size(); }
  const Perm& operator[](std::uint32_t i) const { return elems_[i]; }
  std::vector<Perm> take() && { return std::move(elems_); }

private:
  std::vector<Perm> elems_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash_;
};

}  // namespace

std::optional<std::vector<Perm>> close_generators(const std::vector<Perm>& gens, int degree,
                                                  std::size_t cap) {
  PermSet set;
  set.insert(Perm(degree));
  std::vector<std::uint32_t> frontier{0};

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  while (!frontier.empty()) {
    // Products of the whole frontier with every generator, computed in
    // chunks; insertion stays in chunk order, so results are deterministic.
    std::vector<Perm> products;
    products.reserve(frontier.size() * gens.size());
    auto chunk_products = [&](std::size_t lo, std::size_t hi) {
      std::vector<Perm> out;
      out.reserve((hi - lo) * gens.size());
      for (std::size_t i = lo; i < hi; ++i)
        for (const Perm& g : gens) out.push_back(compose(g, set[frontier[i]]));
      return out;
    };
    if (frontier.size() * gens.size() >= 4096 && hw > 1) {
      std::size_t per = (frontier.size() + hw - 1) / hw;
      std::vector<std::future<std::vector<Perm>>> futs;
      for (std::size_t lo = 0; lo < frontier.size(); lo += per)
        futs.push_back(std::async(std::launch::async, chunk_products, lo,
                                  std::min(frontier.size(), lo + per)));
      for (auto& f : futs)
        for (Perm& p : f.get()) products.push_back(std::move(p));
    } else {
      products = chunk_products(0, frontier.size());
    }

    std::vector<std::uint32_t> next;
    for (Perm& p : products) {
      auto [idx, fresh] = set.insert(std::move(p));
      if (fresh) {
        if (set.size() > cap) return std::nullopt;
        next.push_back(idx);
      }
    }
    frontier = std::move(next);
  }
  return std::move(set).take();
}

}  // namespace rigid
