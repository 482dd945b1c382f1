#pragma once

#include <random>
#include <string>
#include <vector>

#include "tbtd/matrix.hpp"

namespace tbtd::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20241014);
    return g;
}

inline long long rand_int(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

/// Small random element: rationals with numerators in [-9, 9] and
/// denominators in [1, 5]; residues for prime fields; both parts for
/// extension fields.
inline FieldElement rand_elem(const Field& f) {
    auto part = [&] { return mpq_class(static_cast<long>(rand_int(-9, 9)), static_cast<long>(rand_int(1, 5))); };
    mpq_class a = part();
    a.canonicalize();
    FieldElement x = f.from_rational(a);
    if (f.is_extension()) {
        mpq_class b = part();
        b.canonicalize();
        x += f.from_rational(b) * f.sqrt_d();
    }
    return x;
}

inline FieldElement rand_nonzero(const Field& f) {
    for (;;) {
        FieldElement x = rand_elem(f);
        if (!x.is_zero()) return x;
    }
}

inline Matrix rand_matrix(const Field& f, std::size_t n, std::size_t m) {
    Matrix x(f, n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, j) = rand_elem(f);
    return x;
}

inline Vector ints(const Field& f, std::initializer_list<long long> xs) {
    Vector v;
    for (long long x : xs) v.push_back(f.from_int(x));
    return v;
}

inline Vector parse_all(const Field& f, std::initializer_list<const char*> xs) {
    Vector v;
    for (const char* x : xs) v.push_back(f.parse_element(x));
    return v;
}

inline Matrix mat(const Field& f, std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<Vector> r;
    for (auto row : rows) r.push_back(parse_all(f, row));
    Matrix m(f, r.size(), r[0].size());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) m(i, j) = r[i][j];
    return m;
}

}  // namespace tbtd::testing
