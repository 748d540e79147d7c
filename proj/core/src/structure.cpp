#include "cydft/structure.hpp"

#include <algorithm>

namespace cydft {

CosetStructure CosetStructure::build(std::uint32_t n, CosetOrdering ordering) {
  if (n < 3 || (n & (n + 1)) != 0) {
    throw Error(Errc::length_mismatch,
                "length " + std::to_string(n) + " is not 2^m - 1 for m >= 2");
  }

  std::vector<bool> seen(n, false);
  std::vector<Coset> cosets;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (seen[c]) continue;
    Coset coset;
    coset.leader = c;
    std::uint32_t x = c;
    do {
      seen[x] = true;
      coset.elements.push_back(x);
      x = x * 2 % n;
    } while (x != c);
    cosets.push_back(std::move(coset));
  }

  // The zero coset is already first (leader 0 is the first index visited).
  auto by_size = [](const Coset& a, const Coset& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.leader < b.leader;
  };
  auto by_leader = [](const Coset& a, const Coset& b) {
    return a.leader < b.leader;
  };
  if (ordering == CosetOrdering::SizeDescending) {
    std::sort(cosets.begin() + 1, cosets.end(), by_size);
  } else {
    std::sort(cosets.begin() + 1, cosets.end(), by_leader);
  }

  CosetStructure s;
  s.n_ = n;
  s.ordering_ = ordering;
  s.cosets_ = std::move(cosets);
  s.z_.reserve(n);
  for (const Coset& c : s.cosets_)
    s.z_.insert(s.z_.end(), c.elements.begin(), c.elements.end());
  return s;
}

std::vector<FieldElement> CosetStructure::apply_pi(
    std::span<const FieldElement> f) const {
  if (f.size() != n_) {
    throw Error(Errc::length_mismatch,
                "vector length " + std::to_string(f.size()) + " != n = " +
                    std::to_string(n_));
  }
  std::vector<FieldElement> out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out[i] = f[z_[i]];
  return out;
}

std::vector<FieldElement> CosetStructure::apply_pi_inverse(
    std::span<const FieldElement> v) const {
  if (v.size() != n_) {
    throw Error(Errc::length_mismatch,
                "vector length " + std::to_string(v.size()) + " != n = " +
                    std::to_string(n_));
  }
  std::vector<FieldElement> out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out[z_[i]] = v[i];
  return out;
}

std::vector<FieldElement> CosetStructure::apply_e(
    std::span<const FieldElement> v) const {
  if (v.size() != n_) {
    throw Error(Errc::length_mismatch,
                "vector length " + std::to_string(v.size()) + " != n = " +
                    std::to_string(n_));
  }
  std::vector<FieldElement> out(n_);
  out[0] = v[0];
  for (std::uint32_t i = 1; i < n_; ++i) out[i] = v[n_ - i];
  return out;
}

std::vector<std::uint32_t> CosetStructure::compose_pi_e() const {
  std::vector<std::uint32_t> perm(n_);
  for (std::uint32_t i = 0; i < n_; ++i) perm[i] = (n_ - z_[i]) % n_;
  return perm;
}

Gf2Matrix CosetStructure::pi_matrix() const {
  Gf2Matrix m(n_, n_);
  for (std::uint32_t i = 0; i < n_; ++i) m.set(i, z_[i], true);
  return m;
}

Gf2Matrix CosetStructure::e_matrix() const {
  Gf2Matrix m(n_, n_);
  m.set(0, 0, true);
  for (std::uint32_t i = 1; i < n_; ++i) m.set(i, n_ - i, true);
  return m;
}

}  // namespace cydft
