#include "lembill/compare_encoding.hpp"

namespace lembill::encoding {

namespace {

void check_domain(uint64_t v, unsigned nv) {
    if (nv == 0 || nv > 32) throw Error("encoding: N_v out of range");
    if (nv < 64 && (v >> nv) != 0) throw Error("encoding: value out of domain");
}

inline uint64_t bit(uint64_t v, unsigned nv, unsigned scan) {
    return (v >> (nv - 1 - scan)) & 1;  // scan 0 = MSB
}

}  // namespace

LeftEncoding encode_x(uint64_t x, unsigned nv) {
    check_domain(x, nv);
    LeftEncoding e;
    e.nv = nv;
    const unsigned dim = dimension(nv);
    for (unsigned j = 0; j < nv; ++j) {
        Vec lo(dim, 0), hi(dim, 0);
        for (unsigned t = 0; t < j; ++t) {
            uint64_t xb = bit(x, nv, t);
            lo[2 * t] = xb;
            lo[2 * t + 1] = 1 - xb;
            hi[2 * t] = xb;
            hi[2 * t + 1] = 1 - xb;
        }
        uint64_t xb = bit(x, nv, j);
        lo[2 * j] = xb;
        lo[2 * j + 1] = 1;
        hi[2 * j + 2] = 1 - xb;
        hi[2 * j + 3] = 1;
        e.less.push_back(std::move(lo));
        e.greater.push_back(std::move(hi));
    }
    return e;
}

RightEncoding encode_y(uint64_t y, unsigned nv) {
    check_domain(y, nv);
    RightEncoding e;
    e.nv = nv;
    const unsigned dim = dimension(nv);
    for (unsigned j = 0; j < nv; ++j) {
        Vec v(dim, 0);
        for (unsigned t = 0; t < j; ++t) {
            uint64_t yb = bit(y, nv, t);
            v[2 * t] = 1 - yb;
            v[2 * t + 1] = yb;
        }
        uint64_t yb = bit(y, nv, j);
        v[2 * j] = 1;
        v[2 * j + 1] = 1 - yb;
        v[2 * j + 2] = 1;
        v[2 * j + 3] = yb;
        e.vecs.push_back(std::move(v));
    }
    return e;
}

namespace {
uint64_t dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("encoding: dimension mismatch");
    uint64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
}  // namespace

Cmp plain_compare(const LeftEncoding& xe, const RightEncoding& ye) {
    if (xe.nv != ye.nv) throw Error("plain_compare: N_v mismatch");
    for (unsigned j = 0; j < xe.nv; ++j) {
        bool lt = dot(xe.less[j], ye.vecs[j]) == 0;
        bool gt = dot(xe.greater[j], ye.vecs[j]) == 0;
        if (lt && gt) throw Error("plain_compare: ambiguous encoding");
        if (lt) return Cmp::LT;
        if (gt) return Cmp::GT;
    }
    return Cmp::EQ;
}

unsigned zero_hits(const LeftEncoding& xe, const RightEncoding& ye) {
    if (xe.nv != ye.nv) throw Error("zero_hits: N_v mismatch");
    unsigned hits = 0;
    for (unsigned j = 0; j < xe.nv; ++j) {
        if (dot(xe.less[j], ye.vecs[j]) == 0) ++hits;
        if (dot(xe.greater[j], ye.vecs[j]) == 0) ++hits;
    }
    return hits;
}

}  // namespace lembill::encoding
