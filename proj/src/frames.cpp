#include "graded/frames.hpp"

#include "graded/errors.hpp"

#include <string>
#include <vector>

namespace graded::frames {

namespace {

struct Term {
    int component;
    double coeff;
    std::vector<int> powers;  // sparse: (variable, exponent) pairs flattened
};

// Builds a polynomial field from terms coeff * prod x_v^e placed in the given component.
VectorFieldSpec field(const std::string& label, int n, const std::vector<Term>& terms) {
    std::vector<std::vector<Monomial>> comps(n);
    for (const auto& t : terms) {
        Monomial m;
        m.coeff = t.coeff;
        m.powers.assign(n, 0);
        for (std::size_t i = 0; i + 1 < t.powers.size(); i += 2) m.powers[t.powers[i]] += t.powers[i + 1];
        comps[t.component].push_back(m);
    }
    std::vector<MultiPolynomial> polys;
    for (auto& c : comps) polys.emplace_back(n, std::move(c));
    return polynomial_field(label, std::move(polys));
}

}  // namespace

AdaptedFrame heisenberg(int n) {
    if (n < 1) throw InputError("Heisenberg group index must be positive");
    const int dim = 2 * n + 1, t = 2 * n;
    std::vector<VectorFieldSpec> f;
    for (int i = 0; i < n; ++i)
        f.push_back(field("X" + std::to_string(i + 1), dim, {{i, 1.0, {}}, {t, -0.5, {n + i, 1}}}));
    for (int i = 0; i < n; ++i)
        f.push_back(field("Y" + std::to_string(i + 1), dim, {{n + i, 1.0, {}}, {t, 0.5, {i, 1}}}));
    f.push_back(field("T", dim, {{t, 1.0, {}}}));
    return AdaptedFrame(n == 1 ? "heisenberg_h1" : "heisenberg_hn(" + std::to_string(n) + ")", std::move(f),
                        {2 * n, dim});
}

AdaptedFrame heisenberg_contact() {
    std::vector<VectorFieldSpec> f;
    f.push_back(field("X", 3, {{0, 1.0, {}}, {2, 1.0, {1, 1}}}));
    f.push_back(field("Y", 3, {{1, 1.0, {}}, {2, -1.0, {0, 1}}}));
    f.push_back(field("T", 3, {{2, 1.0, {}}}));
    return AdaptedFrame("heisenberg_contact_h1", std::move(f), {2, 3});
}

namespace {

std::vector<VectorFieldSpec> engel_fields() {
    std::vector<VectorFieldSpec> f;
    f.push_back(field("X1", 4, {{0, 1.0, {}}}));
    f.push_back(field("X2", 4, {{1, 1.0, {}}, {2, 1.0, {0, 1}}, {3, 0.5, {0, 2}}}));
    f.push_back(field("X3", 4, {{2, 1.0, {}}, {3, 1.0, {0, 1}}}));
    f.push_back(field("X4", 4, {{3, 1.0, {}}}));
    return f;
}

}  // namespace

AdaptedFrame engel() { return AdaptedFrame("engel", engel_fields(), {2, 3, 4}); }

AdaptedFrame engel_mislabeled() {
    auto f = engel_fields();
    std::swap(f[2], f[3]);
    return AdaptedFrame("engel_mislabeled", std::move(f), {2, 3, 4});
}

AdaptedFrame r5_degree2() {
    std::vector<VectorFieldSpec> f;
    f.push_back(field("X1", 5, {{0, 1.0, {}}}));
    f.push_back(field("X2", 5, {{4, 1.0, {}}, {1, 1.0, {0, 1}}, {2, 0.5, {0, 2}}, {3, 1.0 / 6.0, {0, 3}}}));
    f.push_back(field("X3", 5, {{1, 1.0, {}}, {2, 1.0, {0, 1}}, {3, 0.5, {0, 2}}}));
    f.push_back(field("X4", 5, {{2, 1.0, {}}, {3, 1.0, {0, 1}}}));
    f.push_back(field("X5", 5, {{3, 1.0, {}}}));
    return AdaptedFrame("r5_degree2", std::move(f), {2, 3, 4, 5});
}

AdaptedFrame r5_rank3() {
    std::vector<VectorFieldSpec> f;
    f.push_back(field("X1", 5, {{0, 1.0, {}}}));
    f.push_back(field("X2", 5, {{1, 1.0, {}}, {2, 1.0, {0, 1}}, {3, 0.5, {0, 2}}}));
    f.push_back(field("X3", 5, {{4, 1.0, {}}}));
    f.push_back(field("X4", 5, {{2, 1.0, {}}, {3, 1.0, {0, 1}}}));
    f.push_back(field("X5", 5, {{3, 1.0, {}}}));
    return AdaptedFrame("r5_rank3", std::move(f), {3, 4, 5});
}

AdaptedFrame kolmogorov() {
    // coordinates (x, y, z, t) = indices 0..3
    std::vector<VectorFieldSpec> f;
    f.push_back(field("X1", 4, {{0, 1.0, {}}}));
    f.push_back(field("X2", 4, {{3, 1.0, {}}, {1, 1.0, {0, 1}}, {2, 0.5, {0, 2}}}));
    f.push_back(field("X3", 4, {{1, 1.0, {}}, {2, 1.0, {0, 1}}}));
    f.push_back(field("X4", 4, {{2, 1.0, {}}}));
    return AdaptedFrame("kolmogorov", std::move(f), {1, 2, 3, 4});
}

AdaptedFrame euclidean_split(int n, int k) {
    if (n < 2 || k < 1 || k > n) throw InputError("euclidean_split needs n >= 2 and 1 <= k <= n");
    std::vector<VectorFieldSpec> f;
    for (int i = 0; i < n; ++i) f.push_back(field("E" + std::to_string(i + 1), n, {{i, 1.0, {}}}));
    std::vector<int> growth = k == n ? std::vector<int>{n} : std::vector<int>{k, n};
    return AdaptedFrame("euclidean_split(" + std::to_string(n) + "," + std::to_string(k) + ")", std::move(f), growth);
}

}  // namespace graded::frames
