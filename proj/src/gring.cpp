#include "grcs/gring.hpp"

namespace grcs {

const GroupTables& GroupTables::instance() {
    static const GroupTables tables;
    return tables;
}

GroupTables::GroupTables() {
    std::array<Permutation, kOrder> elems;
    for (int i = 0; i < kOrder; ++i) elems[i] = unrank(i);
    for (int i = 0; i < kOrder; ++i) {
        for (int j = 0; j < kOrder; ++j)
            mul_[i][j] = uint8_t(rank(compose(elems[i], elems[j])));
        inv_[i] = uint8_t(rank(grcs::inverse(elems[i])));
    }
}

bool GroupRingElement::is_zero() const {
    for (uint8_t c : coeffs)
        if (c) return false;
    return true;
}

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = add7(a.coeffs[i], b.coeffs[i]);
    return out;
}

GroupRingElement operator-(const GroupRingElement& a) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = neg7(a.coeffs[i]);
    return out;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = sub7(a.coeffs[i], b.coeffs[i]);
    return out;
}

void convolve_accumulate(ConvolutionAcc& acc, const GroupRingElement& a,
                         const GroupRingElement& b) {
    const GroupTables& t = GroupTables::instance();
    const uint8_t* __restrict bc = b.coeffs.data();
    for (int i = 0; i < kOrder; ++i) {
        const uint16_t ai = a.coeffs[i];
        if (!ai) continue;
        // Row i is a permutation of 0..119, so the 120 scatter targets of
        // one pass are pairwise distinct.
        const uint8_t* __restrict row = t.product_row(i).data();
        for (int j = 0; j < kOrder; ++j) acc[row[j]] += uint16_t(ai * bc[j]);
    }
}

GroupRingElement reduce(const ConvolutionAcc& acc) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = uint8_t(acc[i] % 7);
    return out;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    ConvolutionAcc acc{};
    convolve_accumulate(acc, a, b);
    return reduce(acc);
}

GroupRingElement scalar_mul(uint8_t n, const GroupRingElement& a) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = mul7(n, a.coeffs[i]);
    return out;
}

GroupRingElement embed_group(const Permutation& p) {
    GroupRingElement out;
    out.coeffs[rank(p)] = 1;
    return out;
}

GroupRingElement embed_scalar(uint8_t n) {
    GroupRingElement out;
    out.coeffs[0] = uint8_t(n % 7);
    return out;
}

Gf7Matrix regular_representation(const GroupRingElement& a) {
    const GroupTables& t = GroupTables::instance();
    Gf7Matrix rep(kOrder, kOrder);
    // (a * g_j) has coefficient a(g_i g_j^-1) at g_i.
    for (int j = 0; j < kOrder; ++j) {
        const uint8_t jinv = t.inverse(j);
        for (int i = 0; i < kOrder; ++i) rep.at(i, j) = a.coeffs[t.product(i, jinv)];
    }
    return rep;
}

bool is_unit(const GroupRingElement& a) {
    return regular_representation(a).rank() == kOrder;
}

std::optional<GroupRingElement> invert_unit(const GroupRingElement& a) {
    std::vector<uint8_t> e1(kOrder, 0);
    e1[0] = 1;
    auto x = regular_representation(a).solve(e1);
    if (!x) return std::nullopt;
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = (*x)[i];
    return out;
}

GroupRingElement random_element(RandomSource& rng) {
    GroupRingElement out;
    for (int i = 0; i < kOrder; ++i) out.coeffs[i] = rng.residue();
    return out;
}

}  // namespace grcs
