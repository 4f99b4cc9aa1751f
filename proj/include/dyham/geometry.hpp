#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace dyham {

using index_t = std::int64_t;

inline constexpr int kMaxDim = 3;

// Dyadic cube Q_{j,m} = prod_nu [ m_nu 2^-j, (m_nu+1) 2^-j ),  |Q| = 2^(-j n).
// Larger level = finer cube.  Only the first n entries of `index` are used.
struct DyadicCube {
    int level = 0;
    std::array<index_t, kMaxDim> index{};

    bool operator==(const DyadicCube&) const = default;
};

// Finite dyadic grid: base cube [0, 2^-j_min)^n resolved down to level J.
// Functions live on the 2^((J-j_min) n) finest cells (level-J cubes).
class GridGeometry {
public:
    GridGeometry(int n, int j_min, int J);

    int dim() const { return n_; }
    int level_min() const { return j_min_; }
    int level_max() const { return J_; }
    int refinement_depth() const { return J_ - j_min_; }

    index_t cells_per_axis() const { return index_t(1) << (J_ - j_min_); }
    index_t cell_count() const { return cell_count_; }

    // 2^(j - j_min) cubes per axis at level j.
    index_t cubes_per_axis(int level) const;
    index_t cube_count(int level) const;

    double cell_measure() const { return measure(J_); }
    double base_measure() const { return measure(j_min_); }
    // |Q| for any cube at `level`
    double measure(int level) const { return std::exp2(double(-level * n_)); }
    // |Q|^x computed as 2^(-level n x); keeps powers of the measure consistent
    double measure_pow(int level, double x) const {
        return std::exp2(double(-level * n_) * x);
    }

    DyadicCube base_cube() const { return DyadicCube{j_min_, {}}; }
    bool contains(const DyadicCube& q) const;
    void require(const DyadicCube& q) const;  // throws std::out_of_range

    // Row-major position of a cube among the cubes of its level (axis 0 slowest).
    index_t cube_flat_index(const DyadicCube& q) const;
    DyadicCube cube_from_flat(int level, index_t flat) const;

    // Row-major cell index of the finest-level cell with multi-index i.
    index_t cell_flat_index(const std::array<index_t, kMaxDim>& i) const;

    // Finest cells covered by q: a row-major box [first, first+extent) per axis.
    index_t cells_in_cube(const DyadicCube& q) const {
        return index_t(1) << ((J_ - q.level) * n_);
    }

    bool operator==(const GridGeometry& o) const {
        return n_ == o.n_ && j_min_ == o.j_min_ && J_ == o.J_;
    }

private:
    int n_, j_min_, J_;
    index_t cell_count_;
};

// k-fold dyadic parent R with Q subset R, |R| = 2^(k n) |Q|.
DyadicCube parent_cube(const DyadicCube& q, int k = 1);

// The 2^n children in row-major order of their offset bits.
// Child b has index 2 m + b, offset bit for axis nu stored at bit (n-1-nu).
void children(const DyadicCube& q, int n, std::function<void(const DyadicCube&)> fn);

// Set containment Q superset R for cubes of one dyadic family.
bool cube_contains(const DyadicCube& q, const DyadicCube& r, int n);
bool cubes_disjoint(const DyadicCube& q, const DyadicCube& r, int n);

std::string cube_to_string(const DyadicCube& q, int n);

// --- Haar sign patterns -------------------------------------------------------
//
// A pattern eps in (Z/2Z)^n \ {0} is packed into a mask whose bit (n-1-nu)
// carries eps_nu, so masks 1 .. 2^n-1 in increasing order enumerate the
// patterns lexicographically in (eps_0, ..., eps_{n-1}).  On the child with
// offset bits b the tensor Haar function has sign (-1)^{popcount(eps & b)}.

inline int pattern_count(int n) { return (1 << n) - 1; }

inline double child_sign(unsigned pattern, unsigned child_bits) {
    return (std::popcount(pattern & child_bits) & 1) ? -1.0 : 1.0;
}

void require_same_geometry(const GridGeometry& a, const GridGeometry& b);

}  // namespace dyham
