#pragma once

#include "ring.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace hopfext {

// sorted by index, exact entries
using SpVec = std::vector<std::pair<uint32_t, Rat>>;

SpVec spvec_add(const SpVec& a, const SpVec& b, const CoefficientRing& ring);
SpVec spvec_axpy(const SpVec& a, const Rat& c, const SpVec& b,
                 const CoefficientRing& ring);  // a + c*b
SpVec spvec_scale(const SpVec& a, const Rat& c, const CoefficientRing& ring);

// Incremental column echelon.  Over Z_(p), pivots carry the minimal
// p-valuation seen at their lead row (incoming entries of lower valuation
// swap in), so the stored columns are a lattice basis of the span of
// everything fed in.  Companions are carried through all operations, scaled
// by the same unit factors, so "stored column = sum companion_j * input_j"
// holds exactly at all times.
class IEchelon {
public:
    virtual ~IEchelon() = default;

    struct AddResult {
        bool independent = false;
        SpVec companion;  // when dependent: 0 = sum companion_j * input_j
    };
    virtual AddResult add(SpVec v, SpVec companion) = 0;

    // v = sum comb_j * input_j + remainder; does not modify the echelon
    virtual std::pair<SpVec, SpVec> reduce(const SpVec& v) const = 0;

    virtual int rank() const = 0;
    virtual std::unique_ptr<IEchelon> clone() const = 0;
};

std::unique_ptr<IEchelon> make_echelon(CoefficientRing ring, bool track_companions);

// Column-sparse matrix wrapper for homology computations.
struct SparseMatrix {
    uint32_t nrows = 0;
    std::vector<SpVec> cols;
    long nnz() const {
        long n = 0;
        for (auto& c : cols) n += (long)c.size();
        return n;
    }
};

int sparse_rank(const SparseMatrix& M, const CoefficientRing& ring);

// kernel lattice basis (saturated over Z_(p); plain kernel over a field)
std::vector<SpVec> sparse_kernel(const SparseMatrix& M, const CoefficientRing& ring);

// Smith normal form over Z_(p) (or a field): p-valuations of the nonzero
// diagonal entries.  Destroys its argument.
std::vector<long> snf_exponents(SparseMatrix M, const CoefficientRing& ring);

// SNF with left transform: U * M * W = diag; uinv_cols are the columns of
// U^{-1}, pivot rows first (paired with exponents), then the free rest.
struct SnfTransform {
    std::vector<long> exponents;
    std::vector<SpVec> uinv_cols;
};
SnfTransform snf_with_left_transform(SparseMatrix M, const CoefficientRing& ring);

}  // namespace hopfext
