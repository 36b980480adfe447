#include "psense/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace psense::gf2 {

BitVec BitVec::from_indices(std::size_t len, const std::vector<int>& idx) {
    BitVec v(len);
    for (int i : idx) {
        if (i < 0 || std::size_t(i) >= len)
            throw std::invalid_argument("BitVec::from_indices: index out of range");
        v.set(std::size_t(i));
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (len_ != o.len_) throw std::invalid_argument("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVec::operator<(const BitVec& o) const {
    if (len_ != o.len_) return len_ < o.len_;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] != o.words_[i]) {
            std::uint64_t d = words_[i] ^ o.words_[i];
            std::uint64_t low = d & (~d + 1);  // lowest differing bit
            return (words_[i] & low) == 0;
        }
    }
    return false;
}

std::size_t BitVec::weight() const {
    std::size_t w = 0;
    for (auto x : words_) w += std::size_t(std::popcount(x));
    return w;
}

bool BitVec::any() const {
    for (auto x : words_) if (x) return true;
    return false;
}

int BitVec::dot(const BitVec& a, const BitVec& b) {
    if (a.len_ != b.len_) throw std::invalid_argument("BitVec dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
}

std::vector<int> BitVec::indices() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t x = words_[w];
        while (x) {
            out.push_back(int(w * 64 + std::size_t(std::countr_zero(x))));
            x &= x - 1;
        }
    }
    return out;
}

int BitVec::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return int(w * 64 + std::size_t(std::countr_zero(words_[w])));
    return -1;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitVec BitMatrix::mul(const BitVec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("BitMatrix::mul: dimension mismatch");
    BitVec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (BitVec::dot(row_[r], x)) y.set(r);
    return y;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (int c : row_[r].indices()) t.set(std::size_t(c), r);
    return t;
}

BitMatrix BitMatrix::keep_rows(const std::vector<bool>& keep) const {
    if (keep.size() != rows_) throw std::invalid_argument("BitMatrix::keep_rows: mask size mismatch");
    BitMatrix out(std::size_t(std::count(keep.begin(), keep.end(), true)), cols_);
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows_; ++r)
        if (keep[r]) out.row_[k++] = row_[r];
    return out;
}

namespace {

// Row echelon over a working copy; pivot = first row with a set bit in the
// current column, scanning columns left to right.
struct Echelon {
    std::vector<BitVec> rows;
    std::vector<int> pivot_col;  // per eliminated row
    std::size_t rank = 0;
};

Echelon eliminate(std::vector<BitVec> rows, std::size_t cols) {
    Echelon e;
    e.rows = std::move(rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < e.rows.size(); ++c) {
        std::size_t p = r;
        while (p < e.rows.size() && !e.rows[p].get(c)) ++p;
        if (p == e.rows.size()) continue;
        std::swap(e.rows[r], e.rows[p]);
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            if (i != r && e.rows[i].get(c)) e.rows[i] ^= e.rows[r];
        e.pivot_col.push_back(int(c));
        ++r;
    }
    e.rank = r;
    return e;
}

}  // namespace

std::size_t BitMatrix::rank() const {
    return eliminate(row_, cols_).rank;
}

std::optional<BitVec> BitMatrix::solve(const BitVec& b) const {
    if (b.size() != rows_) throw std::invalid_argument("BitMatrix::solve: rhs length mismatch");
    // Augment with b as an extra column.
    std::vector<BitVec> aug(rows_, BitVec(cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (int c : row_[r].indices()) aug[r].set(std::size_t(c));
        if (b.get(r)) aug[r].set(cols_);
    }
    Echelon e;
    e.rows = std::move(aug);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < e.rows.size(); ++c) {
        std::size_t p = r;
        while (p < e.rows.size() && !e.rows[p].get(c)) ++p;
        if (p == e.rows.size()) continue;
        std::swap(e.rows[r], e.rows[p]);
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            if (i != r && e.rows[i].get(c)) e.rows[i] ^= e.rows[r];
        e.pivot_col.push_back(int(c));
        ++r;
    }
    // Inconsistent iff a zero row has rhs 1.
    for (std::size_t i = r; i < e.rows.size(); ++i)
        if (e.rows[i].get(cols_)) {
            bool lhs_zero = true;
            for (std::size_t c = 0; c < cols_; ++c)
                if (e.rows[i].get(c)) { lhs_zero = false; break; }
            if (lhs_zero) return std::nullopt;
        }
    BitVec x(cols_);
    for (std::size_t i = 0; i < e.pivot_col.size(); ++i)
        if (e.rows[i].get(cols_)) x.set(std::size_t(e.pivot_col[i]));
    if (mul(x) != b) throw std::logic_error("BitMatrix::solve: verification failed");
    return x;
}

std::vector<BitVec> BitMatrix::kernel_basis() const {
    Echelon e = eliminate(row_, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : e.pivot_col) is_pivot[std::size_t(c)] = true;
    std::vector<BitVec> basis;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        BitVec v(cols_);
        v.set(c);
        for (std::size_t i = 0; i < e.pivot_col.size(); ++i)
            if (e.rows[i].get(c)) v.set(std::size_t(e.pivot_col[i]));
        if (mul(v).any()) throw std::logic_error("BitMatrix::kernel_basis: vector not in kernel");
        basis.push_back(std::move(v));
    }
    return basis;
}

bool BitMatrix::in_image(const BitVec& b) const {
    return solve(b).has_value();
}

}  // namespace psense::gf2
