#include "core.hpp"

#include <algorithm>
#include <stdexcept>

namespace swp {

bool is_power_of_two(std::uint32_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

std::uint32_t log2_exact(std::uint32_t v) {
    if (!is_power_of_two(v))
        throw std::invalid_argument("log2_exact: value is not a power of two");
    std::uint32_t n = 0;
    while ((1u << n) < v)
        ++n;
    return n;
}

DesignChannel DesignChannel::bec(double delta) {
    DesignChannel d;
    d.kind = Kind::bec;
    d.erasure_prob = delta;
    d.validate();
    return d;
}

DesignChannel DesignChannel::awgn(double ebn0_db) {
    DesignChannel d;
    d.kind = Kind::awgn;
    d.ebn0_db = ebn0_db;
    return d;
}

void DesignChannel::validate() const {
    if (kind == Kind::bec && (erasure_prob < 0.0 || erasure_prob > 1.0))
        throw std::invalid_argument("DesignChannel: erasure probability must lie in [0, 1]");
}

std::uint32_t CodeConfig::stages() const {
    return log2_exact(block_length);
}

std::uint32_t CodeConfig::window_stages() const {
    return log2_exact(window_length);
}

void CodeConfig::validate() const {
    if (!is_power_of_two(block_length))
        throw std::invalid_argument("CodeConfig: N must be a power of two");
    if (!is_power_of_two(window_length))
        throw std::invalid_argument("CodeConfig: M must be a power of two");
    if (window_length > block_length)
        throw std::invalid_argument("CodeConfig: M must not exceed N");
    if (block_length % window_length != 0)
        throw std::invalid_argument("CodeConfig: N must be a multiple of M");
    if (info_length > block_length)
        throw std::invalid_argument("CodeConfig: K must not exceed N");
    design.validate();
}

IndexSet::IndexSet(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw std::invalid_argument("IndexSet: duplicate index");
}

IndexSet IndexSet::complement_of(const IndexSet& set, std::uint32_t universe) {
    if (!set.empty() && set.indices_.back() >= universe)
        throw std::invalid_argument("IndexSet: index outside universe");
    std::vector<std::uint32_t> out;
    out.reserve(universe - set.size());
    auto it = set.indices_.begin();
    for (std::uint32_t i = 0; i < universe; ++i) {
        if (it != set.indices_.end() && *it == i) {
            ++it;
            continue;
        }
        out.push_back(i);
    }
    return IndexSet(std::move(out));
}

bool IndexSet::contains(std::uint32_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

BinaryMatrix::BinaryMatrix(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols), data_(std::size_t{rows} * cols, 0) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("BinaryMatrix: dimensions must be positive");
}

BitVector BinaryMatrix::mul_left(const BitVector& u) const {
    if (u.size() != rows_)
        throw std::invalid_argument("BinaryMatrix: vector length does not match row count");
    BitVector x(cols_, 0);
    for (std::uint32_t r = 0; r < rows_; ++r) {
        if (!u[r])
            continue;
        const std::uint8_t* row = &data_[std::size_t{r} * cols_];
        for (std::uint32_t c = 0; c < cols_; ++c)
            x[c] ^= row[c];
    }
    return x;
}

bool BinaryMatrix::is_lower_triangular_unit_diagonal() const {
    if (rows_ != cols_)
        return false;
    for (std::uint32_t r = 0; r < rows_; ++r) {
        if (at(r, r) != 1)
            return false;
        for (std::uint32_t c = r + 1; c < cols_; ++c)
            if (at(r, c) != 0)
                return false;
    }
    return true;
}

BinaryMatrix make_ws_kernel(std::uint32_t s) {
    if (s == 0)
        throw std::invalid_argument("make_ws_kernel: S must be positive");
    BinaryMatrix w(s, s);
    for (std::uint32_t i = 0; i < s; ++i)
        for (std::uint32_t j = 0; j <= i; ++j)
            w.set(i, j, 1);
    return w;
}

BinaryMatrix polar_transform(std::uint32_t m) {
    BinaryMatrix t(1, 1);
    t.set(0, 0, 1);
    if (m == 0)
        return t;
    BinaryMatrix t2(2, 2);
    t2.set(0, 0, 1);
    t2.set(1, 0, 1);
    t2.set(1, 1, 1);
    for (std::uint32_t i = 0; i < m; ++i)
        t = kronecker(t, t2);
    return t;
}

BinaryMatrix kronecker(const BinaryMatrix& a, const BinaryMatrix& b) {
    BinaryMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::uint32_t ar = 0; ar < a.rows(); ++ar)
        for (std::uint32_t ac = 0; ac < a.cols(); ++ac) {
            if (!a.at(ar, ac))
                continue;
            for (std::uint32_t br = 0; br < b.rows(); ++br)
                for (std::uint32_t bc = 0; bc < b.cols(); ++bc)
                    out.set(ar * b.rows() + br, ac * b.cols() + bc, b.at(br, bc));
        }
    return out;
}

} // namespace swp
