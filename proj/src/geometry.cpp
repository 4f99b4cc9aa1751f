#include "dyham/geometry.hpp"

#include <sstream>
#include <stdexcept>

namespace dyham {

GridGeometry::GridGeometry(int n, int j_min, int J) : n_(n), j_min_(j_min), J_(J) {
    if (n < 1 || n > kMaxDim)
        throw std::invalid_argument("GridGeometry: dimension must be in [1," +
                                    std::to_string(kMaxDim) + "]");
    if (J < j_min)
        throw std::invalid_argument("GridGeometry: need J >= j_min");
    if ((J - j_min) * n > 26)
        throw std::invalid_argument("GridGeometry: refinement too large, (J-j_min)*n > 26");
    cell_count_ = index_t(1) << ((J_ - j_min_) * n_);
}

index_t GridGeometry::cubes_per_axis(int level) const {
    if (level < j_min_ || level > J_)
        throw std::out_of_range("cubes_per_axis: level outside [j_min, J]");
    return index_t(1) << (level - j_min_);
}

index_t GridGeometry::cube_count(int level) const {
    return index_t(1) << ((level - j_min_) * n_);
}

bool GridGeometry::contains(const DyadicCube& q) const {
    if (q.level < j_min_ || q.level > J_) return false;
    const index_t side = index_t(1) << (q.level - j_min_);
    for (int nu = 0; nu < n_; ++nu)
        if (q.index[nu] < 0 || q.index[nu] >= side) return false;
    return true;
}

void GridGeometry::require(const DyadicCube& q) const {
    if (!contains(q))
        throw std::out_of_range("cube " + cube_to_string(q, n_) +
                                " outside geometry (levels [" + std::to_string(j_min_) +
                                "," + std::to_string(J_) + "])");
}

index_t GridGeometry::cube_flat_index(const DyadicCube& q) const {
    const index_t side = cubes_per_axis(q.level);
    index_t flat = 0;
    for (int nu = 0; nu < n_; ++nu) flat = flat * side + q.index[nu];
    return flat;
}

DyadicCube GridGeometry::cube_from_flat(int level, index_t flat) const {
    const index_t side = cubes_per_axis(level);
    DyadicCube q{level, {}};
    for (int nu = n_ - 1; nu >= 0; --nu) {
        q.index[nu] = flat % side;
        flat /= side;
    }
    return q;
}

index_t GridGeometry::cell_flat_index(const std::array<index_t, kMaxDim>& i) const {
    const index_t side = cells_per_axis();
    index_t flat = 0;
    for (int nu = 0; nu < n_; ++nu) flat = flat * side + i[nu];
    return flat;
}

DyadicCube parent_cube(const DyadicCube& q, int k) {
    if (k < 0) throw std::invalid_argument("parent_cube: negative generation count");
    DyadicCube r = q;
    r.level -= k;
    for (auto& m : r.index) m >>= k;  // indices are nonnegative inside a geometry
    return r;
}

void children(const DyadicCube& q, int n, std::function<void(const DyadicCube&)> fn) {
    const unsigned nb = 1u << n;
    for (unsigned b = 0; b < nb; ++b) {
        DyadicCube c{q.level + 1, {}};
        for (int nu = 0; nu < n; ++nu)
            c.index[nu] = 2 * q.index[nu] + ((b >> (n - 1 - nu)) & 1u);
        fn(c);
    }
}

bool cube_contains(const DyadicCube& q, const DyadicCube& r, int n) {
    if (q.level > r.level) return false;
    const int k = r.level - q.level;
    for (int nu = 0; nu < n; ++nu)
        if ((r.index[nu] >> k) != q.index[nu]) return false;
    return true;
}

bool cubes_disjoint(const DyadicCube& q, const DyadicCube& r, int n) {
    return !cube_contains(q, r, n) && !cube_contains(r, q, n);
}

std::string cube_to_string(const DyadicCube& q, int n) {
    std::ostringstream os;
    os << "Q(j=" << q.level << ";m=";
    for (int nu = 0; nu < n; ++nu) os << (nu ? "," : "") << q.index[nu];
    os << ")";
    return os.str();
}

void require_same_geometry(const GridGeometry& a, const GridGeometry& b) {
    if (!(a == b)) throw std::invalid_argument("geometry mismatch between grid functions");
}

}  // namespace dyham
