#pragma once

#include "cohom/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

namespace cohom {

// Coordinate-list sparse matrix over Z.  This is the interchange and storage
// format throughout the library; algorithms densify when profitable.
class SparseMat {
public:
    struct Entry {
        long r, c;
        Int v;
    };

    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(long rows, long cols) : rows_(rows), cols_(cols) {}

    static SparseMat identity(long n) {
        SparseMat m(n, n);
        for (long i = 0; i < n; ++i) m.add(i, i, 1);
        return m;
    }
    static SparseMat zero(long rows, long cols) { return SparseMat(rows, cols); }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void add(long r, long c, Int v) {
        if (v == 0) return;
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("SparseMat: index out of range");
        entries_.push_back({r, c, std::move(v)});
    }

    // Sum duplicate coordinates and drop zeros; sorts entries (r, c).
    void compress() {
        std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.r, a.c) < std::tie(b.r, b.c);
        });
        std::vector<Entry> out;
        out.reserve(entries_.size());
        for (auto& e : entries_) {
            if (!out.empty() && out.back().r == e.r && out.back().c == e.c)
                out.back().v += e.v;
            else
                out.push_back(std::move(e));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Entry& e) { return e.v == 0; }),
                  out.end());
        entries_ = std::move(out);
    }

    SparseMat reduced(const BaseRing& base) const {
        SparseMat m(rows_, cols_);
        for (const auto& e : entries_) m.add(e.r, e.c, base.reduce(e.v));
        m.compress();
        return m;
    }

    // this * other
    SparseMat mul(const SparseMat& other) const;
    // this * vec
    std::vector<Int> apply(const std::vector<Int>& vec) const;
    SparseMat transpose() const;
    SparseMat scaled(const Int& s) const;
    // [this | other] side by side (same row count).
    SparseMat hcat(const SparseMat& other) const;
    // this on top of other (same column count).
    SparseMat vcat(const SparseMat& other) const;
    // Direct sum placement: this in the upper-left, other in the lower-right.
    SparseMat dsum(const SparseMat& other) const;
    SparseMat operator-(const SparseMat& other) const;
    SparseMat operator+(const SparseMat& other) const;
    std::vector<Int> column(long c) const;
    SparseMat columns(const std::vector<long>& idx) const;
    static SparseMat from_columns(long rows, const std::vector<std::vector<Int>>& cols);
    static SparseMat from_dense(long rows, long cols, const std::vector<Int>& rowmajor);
    std::vector<Int> to_dense() const;  // row-major
    bool is_zero() const {
        for (const auto& e : entries_)
            if (e.v != 0) return false;
        return true;
    }
    bool equal(const SparseMat& other) const;

private:
    long rows_, cols_;
    std::vector<Entry> entries_;
};

// Kronecker product (A (x) B)(ia*rB+ib, ja*cB+jb) = A(ia,ja)*B(ib,jb).
SparseMat kron(const SparseMat& A, const SparseMat& B);

}  // namespace cohom
