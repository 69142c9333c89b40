#include "coreg/subspace.hpp"

#include <stdexcept>

namespace coreg::gf {

namespace {
void check_ambient(const Subspace& u, const Subspace& w) {
    if (u.ambient != w.ambient)
        throw std::invalid_argument("subspace ops: ambient dimension mismatch");
}
}  // namespace

Subspace span_rows(const Fp& fp, uint32_t ambient, const Mat& vectors) {
    if (vectors.rows > 0 && vectors.cols != ambient)
        throw std::invalid_argument("span_rows: vector width != ambient");
    return Subspace{ambient, rref(fp, vectors)};
}

Subspace zero_subspace(uint32_t ambient) { return Subspace{ambient, Mat(0, ambient)}; }

Subspace full_subspace(const Fp&, uint32_t ambient) {
    return Subspace{ambient, Mat::identity(ambient)};
}

Subspace sum(const Fp& fp, const Subspace& u, const Subspace& w) {
    check_ambient(u, w);
    Echelon ech(fp, u.ambient);
    std::vector<uint32_t> scratch(u.ambient);
    for (const Mat* m : {&u.basis, &w.basis})
        for (uint32_t i = 0; i < m->rows; ++i) {
            auto r = m->row(i);
            std::copy(r.begin(), r.end(), scratch.begin());
            ech.insert(scratch);
        }
    return Subspace{u.ambient, ech.basis()};
}

Subspace intersect(const Fp& fp, const Subspace& u, const Subspace& w) {
    check_ambient(u, w);
    // Zassenhaus: echelonize [u|u] and [w|0]; rows whose left half died span
    // the intersection in the right half.
    uint32_t n = u.ambient;
    Echelon ech(fp, 2 * n);
    std::vector<uint32_t> row(2 * n);
    for (uint32_t i = 0; i < u.basis.rows; ++i) {
        auto r = u.basis.row(i);
        std::copy(r.begin(), r.end(), row.begin());
        std::copy(r.begin(), r.end(), row.begin() + n);
        ech.insert(row);
    }
    for (uint32_t i = 0; i < w.basis.rows; ++i) {
        auto r = w.basis.row(i);
        std::copy(r.begin(), r.end(), row.begin());
        std::fill(row.begin() + n, row.end(), 0);
        ech.insert(row);
    }
    Mat b = ech.basis();
    Echelon inter(fp, n);
    for (uint32_t i = 0; i < b.rows; ++i) {
        bool left_zero = true;
        for (uint32_t j = 0; j < n && left_zero; ++j)
            if (b.at(i, j)) left_zero = false;
        if (!left_zero) continue;
        std::copy(b.row(i).begin() + n, b.row(i).end(), row.begin());
        inter.insert(std::span<uint32_t>(row.data(), n));
    }
    return Subspace{n, inter.basis()};
}

Subspace perp(const Fp& fp, const Subspace& u) {
    Echelon ech(fp, u.ambient);
    std::vector<uint32_t> scratch(u.ambient);
    for (uint32_t i = 0; i < u.basis.rows; ++i) {
        auto r = u.basis.row(i);
        std::copy(r.begin(), r.end(), scratch.begin());
        ech.insert(scratch);
    }
    return Subspace{u.ambient, ech.kernel(fp)};
}

bool contains(const Fp& fp, const Subspace& u, const Subspace& w) {
    check_ambient(u, w);
    Echelon ech(fp, u.ambient);
    std::vector<uint32_t> scratch(u.ambient);
    for (uint32_t i = 0; i < u.basis.rows; ++i) {
        auto r = u.basis.row(i);
        std::copy(r.begin(), r.end(), scratch.begin());
        ech.insert(scratch);
    }
    for (uint32_t i = 0; i < w.basis.rows; ++i)
        if (!ech.contains(w.basis.row(i))) return false;
    return true;
}

bool contains_vector(const Fp& fp, const Subspace& u, std::span<const uint32_t> v) {
    if (v.size() != u.ambient) throw std::invalid_argument("contains_vector: width mismatch");
    Echelon ech(fp, u.ambient);
    std::vector<uint32_t> scratch(u.ambient);
    for (uint32_t i = 0; i < u.basis.rows; ++i) {
        auto r = u.basis.row(i);
        std::copy(r.begin(), r.end(), scratch.begin());
        ech.insert(scratch);
    }
    return ech.contains(v);
}

}  // namespace coreg::gf
