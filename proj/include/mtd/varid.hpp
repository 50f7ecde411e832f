#pragma once

// Variable identifiers for the polynomial layer. Three kinds:
//   - state variables p_w for state strings w over 1..m (digits, length l+1),
//   - transition entries q_ij,
//   - mixture weights lam_j.
// Everything is packed into one 64-bit code; the raw code gives a stable
// structural order (used for canonical term storage, not for the term order).

#include <cstdint>
#include <string>
#include <vector>

#include "mtd/errors.hpp"

namespace mtd {

enum class VarKind : std::uint8_t { State = 0, ParamQ = 1, ParamLambda = 2 };

struct VarId {
    std::uint64_t code = 0;

    friend bool operator==(VarId a, VarId b) { return a.code == b.code; }
    friend bool operator!=(VarId a, VarId b) { return a.code != b.code; }
    friend bool operator<(VarId a, VarId b) { return a.code < b.code; }  // structural
};

namespace varid_detail {
constexpr int kKindShift = 60;
constexpr int kLenShift = 56;
constexpr std::uint64_t kPayloadMask = (std::uint64_t(1) << kLenShift) - 1;
}  // namespace varid_detail

inline VarKind var_kind(VarId v) {
    return static_cast<VarKind>(v.code >> varid_detail::kKindShift);
}

// State strings are digit vectors with entries 1..9 and length <= 14.
inline VarId state_var(const std::vector<int>& digits) {
    if (digits.empty() || digits.size() > 14) throw ShapeError("state_var: bad length");
    std::uint64_t code = std::uint64_t(digits.size()) << varid_detail::kLenShift;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] < 1 || digits[k] > 9) throw ShapeError("state_var: digit out of range");
        code |= std::uint64_t(digits[k]) << (4 * (13 - k));
    }
    return VarId{code};
}

inline VarId q_var(int i, int j) {
    return VarId{(std::uint64_t(VarKind::ParamQ) << varid_detail::kKindShift) |
                 (std::uint64_t(i) << 4) | std::uint64_t(j)};
}

inline VarId lambda_var(int j) {
    return VarId{(std::uint64_t(VarKind::ParamLambda) << varid_detail::kKindShift) |
                 std::uint64_t(j)};
}

inline int state_len(VarId v) {
    return static_cast<int>((v.code >> varid_detail::kLenShift) & 0xF);
}

inline int state_digit(VarId v, int k) {
    return static_cast<int>((v.code >> (4 * (13 - k))) & 0xF);
}

inline std::vector<int> state_digits(VarId v) {
    std::vector<int> d(state_len(v));
    for (int k = 0; k < static_cast<int>(d.size()); ++k) d[k] = state_digit(v, k);
    return d;
}

inline int q_row(VarId v) { return static_cast<int>((v.code >> 4) & 0xF); }
inline int q_col(VarId v) { return static_cast<int>(v.code & 0xF); }
inline int lambda_index(VarId v) { return static_cast<int>(v.code & 0xF); }

// Term-order ranking of variables. State variables dominate parameters.
// Among state variables the index strings are compared right to left:
// at the first difference the smaller digit wins. Among q's, row-major
// earlier wins; among lambdas, smaller index wins.
inline bool var_greater(VarId a, VarId b) {
    VarKind ka = var_kind(a), kb = var_kind(b);
    if (ka != kb) return static_cast<int>(ka) < static_cast<int>(kb);
    switch (ka) {
        case VarKind::State: {
            int la = state_len(a), lb = state_len(b);
            if (la != lb) return la < lb;  // shorter string ranks higher; not mixed in practice
            for (int k = la - 1; k >= 0; --k) {
                int da = state_digit(a, k), db = state_digit(b, k);
                if (da != db) return da < db;
            }
            return false;
        }
        case VarKind::ParamQ:
        case VarKind::ParamLambda:
            return (a.code & varid_detail::kPayloadMask) < (b.code & varid_detail::kPayloadMask);
    }
    return false;
}

inline std::string var_name(VarId v) {
    switch (var_kind(v)) {
        case VarKind::State: {
            std::string s = "p_";
            for (int k = 0; k < state_len(v); ++k) s += static_cast<char>('0' + state_digit(v, k));
            return s;
        }
        case VarKind::ParamQ:
            return "q_" + std::to_string(q_row(v)) + "_" + std::to_string(q_col(v));
        case VarKind::ParamLambda:
            return "lam_" + std::to_string(lambda_index(v));
    }
    return "?";
}

inline VarId parse_var(const std::string& name) {
    if (name.rfind("p_", 0) == 0) {
        std::vector<int> digits;
        for (std::size_t i = 2; i < name.size(); ++i) {
            if (name[i] < '1' || name[i] > '9') throw ParseError("parse_var: bad state '" + name + "'");
            digits.push_back(name[i] - '0');
        }
        return state_var(digits);
    }
    if (name.rfind("q_", 0) == 0) {
        auto sep = name.find('_', 2);
        if (sep == std::string::npos) throw ParseError("parse_var: bad q '" + name + "'");
        return q_var(std::stoi(name.substr(2, sep - 2)), std::stoi(name.substr(sep + 1)));
    }
    if (name.rfind("lam_", 0) == 0) return lambda_var(std::stoi(name.substr(4)));
    throw ParseError("parse_var: unknown variable '" + name + "'");
}

}  // namespace mtd
