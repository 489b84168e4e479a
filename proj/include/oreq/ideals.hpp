#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oreq/automorphism.hpp"
#include "oreq/errors.hpp"
#include "oreq/ring.hpp"

namespace oreq {

/// Smallest ideal containing the given elements (additive closure of R-multiples).
inline std::vector<Elem> ideal_generated_by(const Ring& ring, const std::vector<Elem>& generators) {
  const std::size_t n = ring.size();
  std::vector<char> in(n, 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  auto insert = [&](Elem x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  for (Elem g : generators)
    for (std::size_t r = 0; r < n; ++r) insert(ring.mul(static_cast<Elem>(r), g));
  // additive closure; the set of R-multiples is already closed under R
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) insert(ring.add(members[i], members[j]));
  std::sort(members.begin(), members.end());
  return members;
}

/// Every ideal of a finite ring, sorted lexicographically by element list.
inline std::vector<std::vector<Elem>> enumerate_ideals(const Ring& ring) {
  if (ring.size() > kMaxRingSize) throw UnsupportedError("ideal enumeration limited to rings with <= 256 elements");
  std::set<std::vector<Elem>> found;
  std::vector<std::vector<Elem>> frontier{{Elem{0}}};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    auto ideal = std::move(frontier.back());
    frontier.pop_back();
    std::vector<char> in(ring.size(), 0);
    for (Elem x : ideal) in[x] = 1;
    for (std::size_t a = 0; a < ring.size(); ++a) {
      if (in[a]) continue;
      auto gens = ideal;
      gens.push_back(static_cast<Elem>(a));
      auto next = ideal_generated_by(ring, gens);
      if (found.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return {found.begin(), found.end()};
}

/// A maximal ideal of a finite ring, stored as its explicit sorted element set.
struct MaximalIdeal {
  RingPtr ring;
  std::vector<Elem> elements;
  std::vector<Elem> generators;

  bool contains(Elem x) const { return std::binary_search(elements.begin(), elements.end(), x); }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements.size(); ++i) out += (i ? "," : "") + ring->name(elements[i]);
    return out + "}";
  }

  friend bool operator==(const MaximalIdeal& a, const MaximalIdeal& b) {
    return same_ring(a.ring, b.ring) && a.elements == b.elements;
  }
};

/// Max(R) by exhaustive ideal enumeration, in lexicographic order of the element lists.
inline std::vector<MaximalIdeal> enumerate_maximal_ideals(const RingPtr& ring) {
  auto ideals = enumerate_ideals(*ring);
  const std::size_t n = ring->size();
  std::vector<std::vector<Elem>> proper;
  for (auto& i : ideals)
    if (i.size() < n) proper.push_back(i);
  auto subset = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::vector<MaximalIdeal> out;
  for (const auto& i : proper) {
    bool maximal = std::none_of(proper.begin(), proper.end(),
                                [&](const auto& j) { return j.size() > i.size() && subset(i, j); });
    if (!maximal) continue;
    MaximalIdeal m{ring, i, {}};
    // a minimal generating set, greedily
    std::vector<Elem> gens;
    for (Elem x : i) {
      if (x == 0) continue;
      if (ideal_generated_by(*ring, gens) == i) break;
      auto with = gens;
      with.push_back(x);
      if (ideal_generated_by(*ring, with).size() > ideal_generated_by(*ring, gens).size()) gens = std::move(with);
    }
    m.generators = std::move(gens);
    out.push_back(std::move(m));
  }
  return out;
}

/// Failure witness for the clubsuit condition: s is outside the ideal but sigma(s) is inside.
struct ClubsuitWitness {
  MaximalIdeal ideal;
  Elem s;
  Elem sigma_s;

  std::string to_string() const {
    const auto& r = *ideal.ring;
    return "m = " + ideal.to_string() + ", s = " + r.name(s) + ", sigma(s) = " + r.name(sigma_s);
  }
};

/// Checks "s outside m implies sigma(s) outside m" for every maximal ideal m.
/// Returns the first violation in enumeration order, or nullopt on pass.
inline std::optional<ClubsuitWitness> clubsuit_check(const Automorphism& sigma) {
  const auto& ring = sigma.ring();
  for (const auto& m : enumerate_maximal_ideals(ring)) {
    for (std::size_t s = 0; s < ring->size(); ++s) {
      Elem e = static_cast<Elem>(s);
      if (m.contains(e)) continue;
      Elem image = sigma.apply(e);
      if (m.contains(image)) return ClubsuitWitness{m, e, image};
    }
  }
  return std::nullopt;
}

/// A multiplicatively closed subset S of a finite ring containing 1.
class MultiplicativeSet {
 public:
  MultiplicativeSet(RingPtr ring, std::vector<Elem> members) : ring_(std::move(ring)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (Elem x : members_)
      if (x >= ring_->size()) throw InputError("multiplicative set element out of range");
    if (!contains(ring_->one())) throw InputError("multiplicative set must contain 1");
    for (Elem a : members_)
      for (Elem b : members_)
        if (!contains(ring_->mul(a, b))) {
          throw InputError("set is not multiplicatively closed: " + ring_->name(a) + "*" + ring_->name(b) + " = " +
                           ring_->name(ring_->mul(a, b)));
        }
  }

  static MultiplicativeSet complement_of(const MaximalIdeal& m) {
    std::vector<Elem> s;
    for (std::size_t x = 0; x < m.ring->size(); ++x)
      if (!m.contains(static_cast<Elem>(x))) s.push_back(static_cast<Elem>(x));
    return MultiplicativeSet(m.ring, std::move(s));
  }

  static MultiplicativeSet trivial(const RingPtr& ring) { return MultiplicativeSet(ring, {ring->one()}); }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Elem>& elements() const noexcept { return members_; }
  bool contains(Elem x) const { return std::binary_search(members_.begin(), members_.end(), x); }

  bool is_sigma_stable(const Automorphism& sigma) const {
    return std::all_of(members_.begin(), members_.end(), [&](Elem s) { return contains(sigma.apply(s)); });
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) out += (i ? "," : "") + ring_->name(members_[i]);
    return out + "}";
  }

 private:
  RingPtr ring_;
  std::vector<Elem> members_;
};

}  // namespace oreq
