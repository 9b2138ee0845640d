#ifndef BPPC_ORACLE_HPP
#define BPPC_ORACLE_HPP

#include "bppc/core.hpp"

#include <stdexcept>

namespace bppc {

struct OracleLimit {
    static constexpr int hard_cap = 14;
    int max_n = 12;
};

struct ExactResult {
    int value = 0;
    Packing packing;
    SolveReport report;
};

class OracleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Minimum bin count by exhaustive depth-first search. Throws OracleRefused
/// when the instance exceeds the size limit.
ExactResult exact_min_bins(const Instance& instance, OracleLimit limit = {});

}  // namespace bppc

#endif  // BPPC_ORACLE_HPP
