#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dimpoly/binompoly.hpp"

namespace dimpoly {

using Point = std::vector<long>;

// Decomposition of the coordinates 0..m-1 into p blocks.  User-facing
// partitions are contiguous; the doubled partition of rho_embed is not.
class Partition {
 public:
  Partition() = default;
  explicit Partition(const std::vector<std::size_t>& block_sizes);
  static Partition from_assignment(const std::vector<std::size_t>& block_of, std::size_t p);
  static Partition trivial(std::size_t m) { return Partition(std::vector<std::size_t>{m}); }

  std::size_t m() const { return block_of_.size(); }
  std::size_t p() const { return coords_.size(); }
  std::size_t block_size(std::size_t k) const { return coords_.at(k).size(); }
  std::vector<std::size_t> block_sizes() const;
  std::size_t block_of(std::size_t coord) const { return block_of_.at(coord); }
  const std::vector<std::size_t>& coords(std::size_t k) const { return coords_.at(k); }
  bool contiguous() const;
  std::string to_text() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }

 private:
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<std::size_t>> coords_;
};

enum class Ambient { Nat, Int };

class LatticeSet {
 public:
  LatticeSet(Ambient ambient, std::size_t dim, std::vector<Point> points = {});
  Ambient ambient() const { return ambient_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  friend bool operator==(const LatticeSet& a, const LatticeSet& b) {
    return a.ambient_ == b.ambient_ && a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  Ambient ambient_;
  std::size_t dim_;
  std::vector<Point> points_;
};

// Enumeration cap: DIMPOLY_MAX_ENUM if set, otherwise 10^7 points.
std::uint64_t default_enumeration_cap();

long ord_block(const Point& a, const Partition& part, std::size_t k);

// Orthants as sign masks: bit i set means coordinate i lies in Z_{<=0}.
// Mask 0 is the all-nonnegative orthant (index 1 in 1-based numbering).
using Orthant = std::uint32_t;
std::vector<Orthant> orthant_of(const Point& a);
inline std::size_t orthant_index(Orthant o) { return static_cast<std::size_t>(o) + 1; }

LatticeSet minimal_elements(const LatticeSet& e);

NumPoly omega(const LatticeSet& e, const Partition& part);
Integer count_V(const LatticeSet& e, const Partition& part, const std::vector<long>& r, std::uint64_t cap = 0);

struct RhoEmbedding {
  LatticeSet points;
  Partition partition;
};
RhoEmbedding rho_embed(const LatticeSet& a, const Partition& part);

NumPoly phi_set(const LatticeSet& a, const Partition& part);
// a <| w: a common orthant holds both and |a_i| <= |w_i| for every i.
bool below(const Point& a, const Point& w);
Integer count_W(const LatticeSet& a, const Partition& part, const std::vector<long>& r, std::uint64_t cap = 0);

// Count of points b in Z^m with ord_i b <= t in m coordinates, as a polynomial in t.
std::vector<Rational> ball_count_coeffs(std::size_t m);
Integer shell_count(const Partition& part, const std::vector<long>& r, const std::vector<long>& s);
Integer shell_enumerate(const Partition& part, const std::vector<long>& r, const std::vector<long>& s,
                        std::uint64_t cap = 0);

// Calls visit(b) for every b in Z^m with s_i <= ord_i b <= r_i, block by block.
template <class Visit>
void for_each_shell_point(const Partition& part, const std::vector<long>& r, const std::vector<long>& s, Visit&& visit);

}  // namespace dimpoly

#include "dimpoly/lattice_impl.hpp"
