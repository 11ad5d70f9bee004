#include "cohom/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cohom {

namespace {

// Line-oriented reader tracking positions for error reporting.
class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) lines_.push_back(line);
    }
    bool done() const { return pos_ >= lines_.size(); }
    long line_no() const { return (long)pos_ + 1; }
    const std::string& peek() const {
        static const std::string empty;
        return done() ? empty : lines_[pos_];
    }
    std::string next() {
        if (done()) throw ParseError(line_no(), 1, "unexpected end of input");
        return lines_[pos_++];
    }
    void expect_line(const std::string& s) {
        std::string got = next();
        if (got != s) throw ParseError(line_no() - 1, 1, "expected '" + s + "', got '" + got + "'");
    }
    // split a line into tokens; throws with column info on bad integers
    std::vector<std::string> tokens(const std::string& line) const {
        std::vector<std::string> out;
        std::istringstream is(line);
        std::string t;
        while (is >> t) out.push_back(t);
        return out;
    }
    Int to_int(const std::string& tok, long line, long col) const {
        try {
            return Int(tok);
        } catch (...) {
            throw ParseError(line, col, "bad integer '" + tok + "'");
        }
    }

private:
    std::string text_;
    std::vector<std::string> lines_;
    size_t pos_ = 0;
};

std::string join_ints(const std::vector<Int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += v[i].get_str();
    }
    return s;
}

std::vector<Int> parse_ints(Reader& r, const std::vector<std::string>& toks, size_t from,
                            long line) {
    std::vector<Int> out;
    for (size_t i = from; i < toks.size(); ++i) out.push_back(r.to_int(toks[i], line, (long)i + 1));
    return out;
}

std::string print_matrix_lines(const std::string& key, const SparseMat& m) {
    std::ostringstream os;
    os << key << " rows " << m.rows() << " cols " << m.cols() << "\n";
    auto dense = m.to_dense();
    for (long r = 0; r < m.rows(); ++r) {
        os << key << " row " << r << " =";
        for (long c = 0; c < m.cols(); ++c) os << " " << dense[size_t(r) * m.cols() + c].get_str();
        os << "\n";
    }
    return os.str();
}

SparseMat parse_matrix_lines(Reader& r, const std::string& key) {
    auto toks = r.tokens(r.next());
    long line = r.line_no() - 1;
    if (toks.size() != 5 || toks[0] != key || toks[1] != "rows" || toks[3] != "cols")
        throw ParseError(line, 1, "expected '" + key + " rows <n> cols <m>'");
    long rows = std::stol(toks[2]), cols = std::stol(toks[4]);
    SparseMat m(rows, cols);
    for (long rr = 0; rr < rows; ++rr) {
        auto t = r.tokens(r.next());
        long ln = r.line_no() - 1;
        if ((long)t.size() != cols + 4 || t[0] != key || t[1] != "row" || t[3] != "=")
            throw ParseError(ln, 1, "expected '" + key + " row " + std::to_string(rr) + " = ...'");
        for (long c = 0; c < cols; ++c) {
            Int v = r.to_int(t[4 + c], ln, 5 + c);
            if (v != 0) m.add(rr, c, v);
        }
    }
    return m;
}

}  // namespace

std::string print_base_ring(const BaseRing& b) { return b.str(); }

BaseRing parse_base_ring(const std::string& s) {
    if (s == "Z") return BaseRing::integers();
    if (s.rfind("Z/", 0) == 0) return BaseRing::mod(Int(s.substr(2)));
    if (s.rfind("F", 0) == 0) return BaseRing::prime_field(Int(s.substr(1)));
    throw ParseError(1, 1, "unknown base ring '" + s + "'");
}

std::string print_algebra(const StructureAlgebra& A) {
    std::ostringstream os;
    os << "cohom.alg v1\n";
    os << "base " << print_base_ring(A.base()) << "\n";
    os << "dim " << A.dim() << "\n";
    for (long i = 0; i < A.dim(); ++i) os << "name " << i << " " << A.names()[i] << "\n";
    os << "unit " << join_ints(A.unit()) << "\n";
    for (long i = 0; i < A.dim(); ++i)
        for (long j = 0; j < A.dim(); ++j)
            os << "mult " << i << " " << j << " = " << join_ints(A.mult(i, j)) << "\n";
    os << "end\n";
    return os.str();
}

StructureAlgebra parse_algebra(const std::string& text) {
    Reader r(text);
    r.expect_line("cohom.alg v1");
    auto bt = r.tokens(r.next());
    if (bt.size() != 2 || bt[0] != "base") throw ParseError(r.line_no() - 1, 1, "expected 'base'");
    BaseRing base = parse_base_ring(bt[1]);
    auto dt = r.tokens(r.next());
    if (dt.size() != 2 || dt[0] != "dim") throw ParseError(r.line_no() - 1, 1, "expected 'dim'");
    long dim = std::stol(dt[1]);
    std::vector<std::string> names(dim);
    for (long i = 0; i < dim; ++i) {
        auto t = r.tokens(r.next());
        if (t.size() != 3 || t[0] != "name") throw ParseError(r.line_no() - 1, 1, "expected 'name'");
        names[std::stol(t[1])] = t[2];
    }
    auto ut = r.tokens(r.next());
    if (ut.empty() || ut[0] != "unit") throw ParseError(r.line_no() - 1, 1, "expected 'unit'");
    std::vector<Int> unit = parse_ints(r, ut, 1, r.line_no() - 1);
    if ((long)unit.size() != dim) throw ParseError(r.line_no() - 1, 2, "unit length != dim");
    std::vector<std::vector<std::vector<Int>>> mult(
        dim, std::vector<std::vector<Int>>(dim, std::vector<Int>(dim)));
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            auto t = r.tokens(r.next());
            long ln = r.line_no() - 1;
            if (t.size() < 4 || t[0] != "mult" || t[3] != "=")
                throw ParseError(ln, 1, "expected 'mult i j = ...'");
            long ti = std::stol(t[1]), tj = std::stol(t[2]);
            if (ti != i || tj != j) throw ParseError(ln, 6, "mult entries out of order");
            auto v = parse_ints(r, t, 4, ln);
            if ((long)v.size() != dim) throw ParseError(ln, 5, "mult vector length != dim");
            mult[i][j] = v;
        }
    r.expect_line("end");
    return StructureAlgebra(base, names, mult, unit);
}

std::string print_bimodule(const Bimodule& M) {
    std::ostringstream os;
    os << "cohom.bim v1\n";
    os << "ground " << print_base_ring(M.ground()) << "\n";
    os << "algebra-dim " << M.algebra_dim() << "\n";
    os << "gens " << M.carrier().gens << "\n";
    os << print_matrix_lines("rel", M.carrier().relations);
    for (long i = 0; i < M.algebra_dim(); ++i) os << print_matrix_lines("left" + std::to_string(i), M.left(i));
    for (long i = 0; i < M.algebra_dim(); ++i)
        os << print_matrix_lines("right" + std::to_string(i), M.right(i));
    os << "end\n";
    return os.str();
}

Bimodule parse_bimodule(const std::string& text, const StructureAlgebra& R) {
    Reader r(text);
    r.expect_line("cohom.bim v1");
    auto gt = r.tokens(r.next());
    if (gt.size() != 2 || gt[0] != "ground") throw ParseError(r.line_no() - 1, 1, "expected 'ground'");
    BaseRing ground = parse_base_ring(gt[1]);
    auto at = r.tokens(r.next());
    if (at.size() != 2 || at[0] != "algebra-dim")
        throw ParseError(r.line_no() - 1, 1, "expected 'algebra-dim'");
    long ad = std::stol(at[1]);
    if (ad != R.dim()) throw ParseError(r.line_no() - 1, 1, "algebra-dim mismatch");
    auto ct = r.tokens(r.next());
    if (ct.size() != 2 || ct[0] != "gens") throw ParseError(r.line_no() - 1, 1, "expected 'gens'");
    long gens = std::stol(ct[1]);
    SparseMat rel = parse_matrix_lines(r, "rel");
    if (rel.rows() != gens) throw ParseError(r.line_no() - 1, 1, "relation rows != gens");
    std::vector<SparseMat> left, right;
    for (long i = 0; i < ad; ++i) left.push_back(parse_matrix_lines(r, "left" + std::to_string(i)));
    for (long i = 0; i < ad; ++i)
        right.push_back(parse_matrix_lines(r, "right" + std::to_string(i)));
    r.expect_line("end");
    return bimodule_over(R, ground, FPModule(ground, gens, rel), std::move(left),
                         std::move(right));
}

std::string print_crossed_extension(const CrossedExtension& X) {
    std::ostringstream os;
    os << "cohom.cros v1\n";
    os << "ground " << print_base_ring(X.ground) << "\n";
    os << "[R]\n" << print_algebra(X.R);
    os << "[C0]\n" << print_algebra(X.xb.C0);
    os << "[M]\n" << print_bimodule(X.M);
    os << "[C1]\n" << print_bimodule(X.xb.C1);
    os << "[maps]\n";
    os << print_matrix_lines("delta", X.xb.delta);
    os << print_matrix_lines("incl", X.incl);
    os << print_matrix_lines("proj", X.proj);
    os << "end\n";
    return os.str();
}

CrossedExtension parse_crossed_extension(const std::string& text) {
    Reader r(text);
    r.expect_line("cohom.cros v1");
    auto gt = r.tokens(r.next());
    if (gt.size() != 2 || gt[0] != "ground") throw ParseError(r.line_no() - 1, 1, "expected 'ground'");
    BaseRing ground = parse_base_ring(gt[1]);
    auto block = [&](const std::string& header) {
        r.expect_line(header);
        std::ostringstream os;
        while (true) {
            std::string line = r.next();
            os << line << "\n";
            if (line == "end") break;
        }
        return os.str();
    };
    StructureAlgebra R = parse_algebra(block("[R]"));
    StructureAlgebra C0 = parse_algebra(block("[C0]"));
    Bimodule M = parse_bimodule(block("[M]"), R);
    Bimodule C1 = parse_bimodule(block("[C1]"), C0);
    r.expect_line("[maps]");
    SparseMat delta = parse_matrix_lines(r, "delta");
    SparseMat incl = parse_matrix_lines(r, "incl");
    SparseMat proj = parse_matrix_lines(r, "proj");
    r.expect_line("end");
    CrossedBimodule xb = validate_crossed(ground, C0, C1, delta);
    CrossedExtension X{ground, std::move(R), std::move(M), std::move(xb), incl, proj};
    validate_crossed_extension(X);
    return X;
}

std::string fingerprint(const std::string& canonical) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string print_resolution(const KillingCyclesResult& res, const BaseRing& target,
                             const std::string& fingerprint_hex) {
    const ChainAlgebra& A = res.resolution;
    if (!A.quasi_free()) throw Error("print_resolution: quasi-free resolutions only");
    std::ostringstream os;
    os << "cohom.resolution v1\n";
    os << "ground " << print_base_ring(A.ground().scalar) << "\n";
    os << "target " << print_base_ring(target) << "\n";
    os << "fingerprint " << fingerprint_hex << "\n";
    os << "bound " << A.bound() << "\n";
    os << "generators " << A.generators().size() << "\n";
    for (size_t i = 0; i < A.generators().size(); ++i)
        os << "gen " << i << " deg " << A.generators()[i].degree << "\n";
    for (size_t i = 0; i < A.generators().size(); ++i)
        os << "dgen " << i << " = " << join_ints(A.generator_diff()[i]) << "\n";
    os << print_matrix_lines("aug", res.augmentation);
    os << "end\n";
    return os.str();
}

ChainAlgebra parse_resolution(const std::string& text) {
    Reader r(text);
    r.expect_line("cohom.resolution v1");
    auto gt = r.tokens(r.next());
    if (gt.size() != 2 || gt[0] != "ground") throw ParseError(r.line_no() - 1, 1, "expected ground");
    BaseRing ground = parse_base_ring(gt[1]);
    r.next();  // target (informational)
    r.next();  // fingerprint
    auto bt = r.tokens(r.next());
    if (bt.size() != 2 || bt[0] != "bound") throw ParseError(r.line_no() - 1, 1, "expected bound");
    int bound = std::stoi(bt[1]);
    auto ct = r.tokens(r.next());
    if (ct.size() != 2 || ct[0] != "generators")
        throw ParseError(r.line_no() - 1, 1, "expected generators");
    long count = std::stol(ct[1]);
    std::vector<ChainAlgebra::Generator> gens(count);
    for (long i = 0; i < count; ++i) {
        auto t = r.tokens(r.next());
        if (t.size() != 4 || t[0] != "gen" || t[2] != "deg")
            throw ParseError(r.line_no() - 1, 1, "expected 'gen i deg d'");
        gens[std::stol(t[1])] = {"x" + t[1], std::stoi(t[3])};
    }
    std::vector<std::vector<Int>> dgen(count);
    for (long i = 0; i < count; ++i) {
        auto t = r.tokens(r.next());
        long ln = r.line_no() - 1;
        if (t.size() < 3 || t[0] != "dgen" || t[2] != "=")
            throw ParseError(ln, 1, "expected 'dgen i = ...'");
        dgen[std::stol(t[1])] = parse_ints(r, t, 3, ln);
    }
    parse_matrix_lines(r, "aug");
    r.expect_line("end");
    return ChainAlgebra(Ground::plain(ground), bound, gens, dgen);
}

std::optional<ChainAlgebra> cache_load_resolution(const std::string& dir,
                                                  const std::string& fingerprint_hex, int bound) {
    std::filesystem::path p =
        std::filesystem::path(dir) / (fingerprint_hex + "-" + std::to_string(bound) + ".res");
    std::ifstream f(p);
    if (!f) return std::nullopt;
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_resolution(ss.str());
}

void cache_store_resolution(const std::string& dir, const std::string& fingerprint_hex,
                            int bound, const KillingCyclesResult& res, const BaseRing& target) {
    std::filesystem::create_directories(dir);
    std::filesystem::path p =
        std::filesystem::path(dir) / (fingerprint_hex + "-" + std::to_string(bound) + ".res");
    std::ofstream f(p);
    f << print_resolution(res, target, fingerprint_hex);
}

}  // namespace cohom
