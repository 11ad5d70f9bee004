#include "cohom/mat.hpp"

#include <map>

namespace cohom {

namespace {
bool debug_checks_flag_init() {
    const char* env = std::getenv("COHOM_DEBUG_CHECKS");
    if (!env) return true;
    return std::string(env) != "0";
}
bool g_debug_checks = debug_checks_flag_init();
}  // namespace

bool debug_checks() { return g_debug_checks; }
void set_debug_checks(bool on) { g_debug_checks = on; }

SparseMat SparseMat::mul(const SparseMat& other) const {
    if (cols_ != other.rows()) throw Error("SparseMat::mul: shape mismatch");
    // Bucket other's entries by row for the join.
    std::vector<std::vector<const Entry*>> by_row(other.rows());
    for (const auto& e : other.entries_) by_row[e.r].push_back(&e);
    SparseMat out(rows_, other.cols());
    for (const auto& a : entries_) {
        for (const Entry* b : by_row[a.c]) out.add(a.r, b->c, a.v * b->v);
    }
    out.compress();
    return out;
}

std::vector<Int> SparseMat::apply(const std::vector<Int>& vec) const {
    if ((long)vec.size() != cols_) throw Error("SparseMat::apply: shape mismatch");
    std::vector<Int> out(rows_, 0);
    for (const auto& e : entries_) out[e.r] += e.v * vec[e.c];
    return out;
}

SparseMat SparseMat::transpose() const {
    SparseMat out(cols_, rows_);
    for (const auto& e : entries_) out.add(e.c, e.r, e.v);
    out.compress();
    return out;
}

SparseMat SparseMat::scaled(const Int& s) const {
    SparseMat out(rows_, cols_);
    if (s == 0) return out;
    for (const auto& e : entries_) out.add(e.r, e.c, e.v * s);
    return out;
}

SparseMat SparseMat::hcat(const SparseMat& other) const {
    if (rows_ != other.rows()) throw Error("SparseMat::hcat: row mismatch");
    SparseMat out(rows_, cols_ + other.cols());
    for (const auto& e : entries_) out.add(e.r, e.c, e.v);
    for (const auto& e : other.entries_) out.add(e.r, cols_ + e.c, e.v);
    return out;
}

SparseMat SparseMat::vcat(const SparseMat& other) const {
    if (cols_ != other.cols()) throw Error("SparseMat::vcat: col mismatch");
    SparseMat out(rows_ + other.rows(), cols_);
    for (const auto& e : entries_) out.add(e.r, e.c, e.v);
    for (const auto& e : other.entries_) out.add(rows_ + e.r, e.c, e.v);
    return out;
}

SparseMat SparseMat::dsum(const SparseMat& other) const {
    SparseMat out(rows_ + other.rows(), cols_ + other.cols());
    for (const auto& e : entries_) out.add(e.r, e.c, e.v);
    for (const auto& e : other.entries_) out.add(rows_ + e.r, cols_ + e.c, e.v);
    return out;
}

SparseMat SparseMat::operator-(const SparseMat& other) const {
    if (rows_ != other.rows() || cols_ != other.cols()) throw Error("SparseMat::-: shape mismatch");
    SparseMat out(rows_, cols_);
    for (const auto& e : entries_) out.add(e.r, e.c, e.v);
    for (const auto& e : other.entries_) out.add(e.r, e.c, -e.v);
    out.compress();
    return out;
}

SparseMat SparseMat::operator+(const SparseMat& other) const {
    if (rows_ != other.rows() || cols_ != other.cols()) throw Error("SparseMat::+: shape mismatch");
    SparseMat out(rows_, cols_);
    for (const auto& e : entries_) out.add(e.r, e.c, e.v);
    for (const auto& e : other.entries_) out.add(e.r, e.c, e.v);
    out.compress();
    return out;
}

std::vector<Int> SparseMat::column(long c) const {
    std::vector<Int> out(rows_, 0);
    for (const auto& e : entries_)
        if (e.c == c) out[e.r] += e.v;
    return out;
}

SparseMat SparseMat::columns(const std::vector<long>& idx) const {
    std::vector<long> pos(cols_, -1);
    for (size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = (long)k;
    SparseMat out(rows_, (long)idx.size());
    for (const auto& e : entries_)
        if (pos[e.c] >= 0) out.add(e.r, pos[e.c], e.v);
    out.compress();
    return out;
}

SparseMat SparseMat::from_columns(long rows, const std::vector<std::vector<Int>>& cols) {
    SparseMat out(rows, (long)cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        if ((long)cols[c].size() != rows) throw Error("from_columns: length mismatch");
        for (long r = 0; r < rows; ++r) out.add(r, (long)c, cols[c][r]);
    }
    return out;
}

SparseMat SparseMat::from_dense(long rows, long cols, const std::vector<Int>& rowmajor) {
    if ((long)rowmajor.size() != rows * cols) throw Error("from_dense: size mismatch");
    SparseMat out(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) out.add(r, c, rowmajor[size_t(r) * cols + c]);
    return out;
}

std::vector<Int> SparseMat::to_dense() const {
    std::vector<Int> out(size_t(rows_) * cols_, 0);
    for (const auto& e : entries_) out[size_t(e.r) * cols_ + e.c] += e.v;
    return out;
}

bool SparseMat::equal(const SparseMat& other) const {
    if (rows_ != other.rows() || cols_ != other.cols()) return false;
    return (*this - other).is_zero();
}

SparseMat kron(const SparseMat& A, const SparseMat& B) {
    SparseMat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (const auto& a : A.entries())
        for (const auto& b : B.entries())
            out.add(a.r * B.rows() + b.r, a.c * B.cols() + b.c, a.v * b.v);
    out.compress();
    return out;
}

}  // namespace cohom
