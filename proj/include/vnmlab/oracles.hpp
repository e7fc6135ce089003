#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vnmlab/errors.hpp"
#include "vnmlab/rng.hpp"

namespace vnmlab {

enum class OracleFamily {
    xor_periodic,     // f(x) = f(x ^ r), 2-to-1
    modexp,           // f(x) = a^x mod L
    deutsch,          // one of the four 1-bit functions f_k
    grover,           // f_k(x) = [x == k]
    deutsch_extended, // F(k, x) = f_k(x), k the 2-bit mode
    grover_extended,  // F(k, x) = [x == k]
};

std::string_view family_name(OracleFamily family);
OracleFamily family_from_name(std::string_view name);

/// Explicit truth table for f: B^n -> B^m plus query counters.
///
/// The table is immutable after construction; the counters are the only
/// mutable part and assume single-threaded use (callers running oracles in
/// parallel must give each run its own instance or synchronize).
struct OracleFunction {
    OracleFamily family{};
    int in_bits = 0;
    int out_bits = 0;
    std::vector<std::uint64_t> table;                // 2^in_bits entries, each < 2^out_bits
    std::map<std::string, std::uint64_t> params;     // family parameters (r / a,L / k / n)

    std::uint64_t classical_queries = 0;
    std::uint64_t quantum_invocations = 0;

    std::uint64_t domain_size() const { return std::uint64_t{1} << in_bits; }

    /// Counted classical table lookup.
    std::uint64_t query(std::uint64_t x) {
        ++classical_queries;
        return table[x];
    }

    std::uint64_t param(const std::string& key) const;
};

/// Throws InvalidOracle unless the table satisfies its family's invariant.
/// Exhaustive; intended for desk-scale tables (in_bits <= 12 or so).
void validate_family(const OracleFunction& oracle);

/// 2-to-1 function with f(x) = f(x ^ r); pair values drawn as a random
/// injection from pair representatives into B^n.
OracleFunction make_xor_periodic(int n, std::uint64_t r, RandomSource& rng);

/// Same family, but pair representatives get values 0, 1, 2, ... in
/// ascending-representative order. For n=2, r=2 this is the table [0,1,0,1].
OracleFunction make_xor_periodic_sequential(int n, std::uint64_t r);

/// f(x) = a^x mod L, out_bits = bit length of L. Requires gcd(a, L) = 1.
OracleFunction make_modexp(std::uint64_t a, std::uint64_t L, int n);

/// One of the four functions B -> B, k in {0b00, 0b01, 0b10, 0b11};
/// table[x] = bit x of k read MSB-first. Balanced iff k is 01 or 10.
OracleFunction deutsch_oracle(int k);
bool deutsch_balanced(int k);

/// f_k(x) = [x == k] on n bits.
OracleFunction grover_oracle(std::uint64_t k, int n);

/// Extended two-input gates: input is the concatenation (mode k, argument x).
OracleFunction make_deutsch_extended();
OracleFunction make_grover_extended(int n);

/// Classical-vs-quantum cost accounting for a session. Measurement cost is
/// an abstract constant: one unit per qubit of each measured register.
struct QueryLedger {
    std::uint64_t classical_queries = 0;
    std::uint64_t quantum_invocations = 0;
    std::uint64_t quantum_runs = 0;
    std::uint64_t measurement_cost_units = 0;

    void add_classical(std::uint64_t q) { classical_queries += q; }
    void add_quantum_run(std::uint64_t invocations, std::uint64_t measured_qubits) {
        quantum_runs += 1;
        quantum_invocations += invocations;
        measurement_cost_units += measured_qubits;
    }
};

struct CollisionResult {
    std::uint64_t x1 = 0;
    std::uint64_t x2 = 0;
    std::uint64_t queries = 0;
};

/// Deterministic scan x = 0, 1, 2, ... until two arguments share a value.
/// Every lookup counts one classical query.
CollisionResult classical_collision_search(OracleFunction& oracle);

/// Classical baseline for the one-bit oracle game: query f(0) and f(1),
/// report whether the function is balanced. Always two queries.
bool classical_deutsch_distinguish(OracleFunction& oracle);

/// Fixture round-trip: {family, params, in_bits, out_bits, table}.
std::string oracle_to_json(const OracleFunction& oracle);
OracleFunction oracle_from_json(const std::string& text);

} // namespace vnmlab
