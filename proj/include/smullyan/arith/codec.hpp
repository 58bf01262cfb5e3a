#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smullyan/arith/ast.hpp"

namespace smullyan::arith {

using Bytes = std::vector<std::uint8_t>;

// Node tags of the byte grammar.
namespace tag {
inline constexpr std::uint8_t Bot = 0x10, Eq = 0x11, Leq = 0x12, Not = 0x13, And = 0x14, Or = 0x15, Imp = 0x16,
                              Forall = 0x17, Exists = 0x18;
inline constexpr std::uint8_t Var = 0x20, Num = 0x21, Add = 0x22, Mul = 0x23, D = 0x24;
inline constexpr std::uint8_t Sentinel = 0x01;
}  // namespace tag

// Base-128, most significant group first, 0x80 on every byte but the last.
void put_varint(Bytes& out, const BigInt& n);

// Prefix serialization without the sentinel.
Bytes serialize(const Term& t);
Bytes serialize(const Formula& f);

BigInt bytes_to_natural(const Bytes& bytes);
Bytes natural_to_bytes(const BigInt& n);

BigInt encode(const Term& t);
BigInt encode(const Formula& f);
BigInt encode(const Expr& e);

// nullopt for every natural that is not the code of a term or formula,
// including non-canonical varints and trailing bytes.
std::optional<Expr> decode(const BigInt& code);
std::optional<Formula> decode_formula(const BigInt& code);

// Membership in the set of codes of v-formulas.
bool is_v_formula(const BigInt& code);

// d(i): the code of phi_i(i) when i is the code of a v-formula, else 0.
BigInt diag(const BigInt& i);

}  // namespace smullyan::arith
