#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/homology.hpp"

namespace surf {

enum class Variant { Standard, Modified };

const char* variant_name(Variant v);

// Antisymmetric dual flow; z is stored on canonical darts.
struct Drainage {
  FaceId sink = 0;
  std::vector<int64_t> z_edge;

  [[nodiscard]] int64_t z(DartId d) const {
    int64_t v = z_edge[edge_of(d)];
    return is_canonical(d) ? v : -v;
  }
};

// cotree_succ[p] is the dual dart leaving p toward the sink (kNone at the sink).
Drainage cotree_drainage(const EmbeddedGraph& g, std::span<const DartId> cotree_succ);

// Sum of z over the darts entering the face subset from outside.
int64_t cut_sum(const EmbeddedGraph& g, const Drainage& dr, std::span<const FaceId> face_subset);

// Lexicographically ordered integer vector: (c0, [unit], h_1..h_2g, z).
struct PerturbedCost {
  Variant variant = Variant::Standard;
  std::vector<int64_t> v;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(v.size()); }
  [[nodiscard]] int64_t c0() const { return v.front(); }
  [[nodiscard]] int64_t z() const { return v.back(); }
};

// Length of a cost vector for genus g.
constexpr int cost_dim(Variant variant, int genus) {
  return variant == Variant::Standard ? 2 * genus + 3 : 2 * genus + 2;
}
// Offset of the first homology component.
constexpr int hom_offset(Variant variant) { return variant == Variant::Standard ? 2 : 1; }

std::strong_ordering compare(const PerturbedCost& a, const PerturbedCost& b);
PerturbedCost add(const PerturbedCost& a, const PerturbedCost& b);
PerturbedCost sub(const PerturbedCost& a, const PerturbedCost& b);
PerturbedCost negate(const PerturbedCost& a);
PerturbedCost scale(const PerturbedCost& a, int64_t k);
PerturbedCost zero_cost(Variant variant, int dim);

inline bool operator==(const PerturbedCost& a, const PerturbedCost& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const PerturbedCost& a, const PerturbedCost& b) { return compare(a, b); }

// Perturbed cost of every dart, stored row-major.
class CostTable {
 public:
  CostTable() = default;
  CostTable(Variant variant, int genus, int num_darts)
      : variant_(variant), genus_(genus), dim_(cost_dim(variant, genus)),
        data_(static_cast<size_t>(num_darts) * dim_, 0) {}

  [[nodiscard]] Variant variant() const noexcept { return variant_; }
  [[nodiscard]] int genus() const noexcept { return genus_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int num_darts() const noexcept { return dim_ == 0 ? 0 : static_cast<int>(data_.size() / dim_); }

  [[nodiscard]] std::span<const int64_t> row(DartId d) const {
    return {data_.data() + static_cast<size_t>(d) * dim_, static_cast<size_t>(dim_)};
  }
  std::span<int64_t> row_mut(DartId d) {
    return {data_.data() + static_cast<size_t>(d) * dim_, static_cast<size_t>(dim_)};
  }
  [[nodiscard]] int64_t c0(DartId d) const { return data_[static_cast<size_t>(d) * dim_]; }
  [[nodiscard]] PerturbedCost cost(DartId d) const {
    auto r = row(d);
    return {variant_, std::vector<int64_t>(r.begin(), r.end())};
  }

 private:
  Variant variant_ = Variant::Standard;
  int genus_ = 0;
  int dim_ = 0;
  std::vector<int64_t> data_;
};

CostTable perturb_costs(const EmbeddedGraph& g, std::span<const int64_t> c, const HomologySignature& sigs,
                        const Drainage& dr, Variant variant);

PerturbedCost sum_over(const CostTable& costs, std::span<const DartId> walk);

// .cst text format: lines "dart_id cost". Missing darts take default_cost when
// it is given, otherwise DartMissing is raised.
std::vector<int64_t> read_cst(std::istream& in, int num_darts, const int64_t* default_cost);
std::vector<int64_t> read_cst_file(const std::string& path, int num_darts, const int64_t* default_cost);
void write_cst(std::ostream& out, std::span<const int64_t> c);

}  // namespace surf
