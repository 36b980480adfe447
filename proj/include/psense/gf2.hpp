#ifndef PSENSE_GF2_HPP
#define PSENSE_GF2_HPP

#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

namespace psense::gf2 {

// Bit vector over F2 packed into 64-bit words. Addition is XOR.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVec from_indices(std::size_t len, const std::vector<int>& idx);

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v = true) {
        if (v) words_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else   words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

    bool operator==(const BitVec& o) const { return len_ == o.len_ && words_ == o.words_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    bool operator<(const BitVec& o) const;  // lexicographic on bit indices, for deterministic ordering

    std::size_t weight() const;
    bool any() const;
    bool none() const { return !any(); }

    // Parity of the AND of two equal-length vectors.
    static int dot(const BitVec& a, const BitVec& b);

    // Indices of set bits, ascending.
    std::vector<int> indices() const;

    int lowest_set() const;  // -1 if none

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense matrix over F2, stored as packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return row_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { row_[r].set(c, v); }
    void flip(std::size_t r, std::size_t c) { row_[r].flip(c); }

    const BitVec& row(std::size_t r) const { return row_[r]; }
    BitVec& row(std::size_t r) { return row_[r]; }

    // M x with x of length cols; result has length rows.
    BitVec mul(const BitVec& x) const;

    BitMatrix transposed() const;

    // Matrix with the given rows removed (keep[i] == false drops row i).
    BitMatrix keep_rows(const std::vector<bool>& keep) const;

    std::size_t rank() const;

    // Some x with M x = b, or nullopt when b is outside the image. The
    // returned x is re-multiplied and checked before returning.
    std::optional<BitVec> solve(const BitVec& b) const;

    // Basis of {x : M x = 0}; size == cols - rank. Pivots are chosen as the
    // first set bit per column so the basis is reproducible across runs.
    std::vector<BitVec> kernel_basis() const;

    bool in_image(const BitVec& b) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> row_;
};

}  // namespace psense::gf2

#endif
