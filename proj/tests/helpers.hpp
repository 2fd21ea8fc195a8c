#pragma once

#include "sphereforge/derived.hpp"

#include <string>
#include <vector>

namespace sft {

using namespace sphereforge;

inline CtxPtr kronecker() {
    return make_context({"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}});
}

inline CtxPtr a3() {
    return make_context({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
}

/// Kronecker quiver with a tacked-on sink: 1 => 2 -> 3.
inline CtxPtr tacked() {
    return make_context({"1", "2", "3"}, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 2}});
}

inline Matrix m1x1(const Rational& x) {
    Matrix m(1, 1);
    m.at(0, 0) = x;
    return m;
}

/// Regular Kronecker module R_lambda: dims (1,1), a -> 1, b -> lambda.
/// The infinite parameter is (a,b) = (0,1).
inline Rep regular(const CtxPtr& ctx, const Rational& lambda, bool infinite = false) {
    std::vector<int> dims{1, 1};
    std::vector<Matrix> mats;
    mats.push_back(m1x1(infinite ? 0 : 1));
    mats.push_back(m1x1(infinite ? 1 : lambda));
    return Rep(ctx, std::move(dims), std::move(mats));
}

/// Image of R_lambda under the tacked embedding <P(2), P(1)>:
/// dims (1,1,1) with a -> 1, b -> lambda, c -> 1.
inline Rep tacked_regular(const CtxPtr& ctx, const Rational& lambda, bool infinite = false) {
    std::vector<int> dims{1, 1, 1};
    std::vector<Matrix> mats;
    mats.push_back(m1x1(infinite ? 0 : 1));
    mats.push_back(m1x1(infinite ? 1 : lambda));
    mats.push_back(m1x1(1));
    return Rep(ctx, std::move(dims), std::move(mats));
}

/// Seeded random representation with dims bounded by max_dim.
inline Rep random_rep(const CtxPtr& ctx, Rng& rng, int max_dim = 3) {
    const Quiver& q = ctx->quiver;
    std::vector<int> dims;
    for (int v = 0; v < q.vertex_count(); ++v)
        dims.push_back(static_cast<int>(rng.integer(0, max_dim)));
    std::vector<Matrix> mats;
    for (int a = 0; a < q.arrow_count(); ++a) {
        Matrix m(dims[q.arrow(a).tgt], dims[q.arrow(a).src]);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rng.rational();
        mats.push_back(std::move(m));
    }
    return Rep(ctx, std::move(dims), std::move(mats));
}

inline std::map<int, int> dims_of(const DObject& x, const DObject& y) {
    return hom_graded(x, y).dims();
}

}  // namespace sft
