#include "vnmlab/oracles.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace vnmlab {

namespace {

int bit_length(std::uint64_t v) {
    return v == 0 ? 1 : 64 - std::countl_zero(v);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

const std::uint64_t kDeutschTables[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

} // namespace

std::string_view family_name(OracleFamily family) {
    switch (family) {
    case OracleFamily::xor_periodic: return "xor_periodic";
    case OracleFamily::modexp: return "modexp";
    case OracleFamily::deutsch: return "deutsch";
    case OracleFamily::grover: return "grover";
    case OracleFamily::deutsch_extended: return "deutsch_extended";
    case OracleFamily::grover_extended: return "grover_extended";
    }
    throw InvalidOracle("unknown oracle family");
}

OracleFamily family_from_name(std::string_view name) {
    if (name == "xor_periodic") return OracleFamily::xor_periodic;
    if (name == "modexp") return OracleFamily::modexp;
    if (name == "deutsch") return OracleFamily::deutsch;
    if (name == "grover") return OracleFamily::grover;
    if (name == "deutsch_extended") return OracleFamily::deutsch_extended;
    if (name == "grover_extended") return OracleFamily::grover_extended;
    throw InvalidOracle("unknown oracle family '" + std::string(name) + "'");
}

std::uint64_t OracleFunction::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw InvalidOracle("oracle missing parameter '" + key + "'");
    return it->second;
}

void validate_family(const OracleFunction& oracle) {
    const std::uint64_t domain = oracle.domain_size();
    if (oracle.table.size() != domain) throw InvalidOracle("table size != 2^in_bits");
    const std::uint64_t out_limit = std::uint64_t{1} << oracle.out_bits;
    for (std::uint64_t v : oracle.table)
        if (v >= out_limit) throw InvalidOracle("table value out of output range");

    switch (oracle.family) {
    case OracleFamily::xor_periodic: {
        const std::uint64_t r = oracle.param("r");
        if (r == 0 || r >= domain) throw InvalidOracle("xor_periodic r out of range");
        std::unordered_map<std::uint64_t, std::uint64_t> preimages;
        for (std::uint64_t x = 0; x < domain; ++x) {
            if (oracle.table[x] != oracle.table[x ^ r])
                throw InvalidOracle("xor_periodic table violates f(x) = f(x^r)");
            ++preimages[oracle.table[x]];
        }
        for (const auto& [value, count] : preimages)
            if (count != 2) throw InvalidOracle("xor_periodic table is not 2-to-1");
        break;
    }
    case OracleFamily::modexp: {
        const std::uint64_t a = oracle.param("a");
        const std::uint64_t L = oracle.param("L");
        if (std::gcd(a, L) != 1) throw InvalidOracle("modexp base not coprime with modulus");
        for (std::uint64_t x = 0; x < domain; ++x)
            if (oracle.table[x] != pow_mod(a, x, L))
                throw InvalidOracle("modexp table mismatch");
        break;
    }
    case OracleFamily::deutsch: {
        const std::uint64_t k = oracle.param("k");
        if (k > 3 || oracle.in_bits != 1 || oracle.out_bits != 1)
            throw InvalidOracle("deutsch oracle malformed");
        if (oracle.table[0] != kDeutschTables[k][0] || oracle.table[1] != kDeutschTables[k][1])
            throw InvalidOracle("deutsch table mismatch for its k");
        break;
    }
    case OracleFamily::grover: {
        const std::uint64_t k = oracle.param("k");
        if (k >= domain || oracle.out_bits != 1) throw InvalidOracle("grover oracle malformed");
        for (std::uint64_t x = 0; x < domain; ++x)
            if (oracle.table[x] != (x == k ? 1u : 0u))
                throw InvalidOracle("grover table is not the Kronecker delta");
        break;
    }
    case OracleFamily::deutsch_extended: {
        if (oracle.in_bits != 3 || oracle.out_bits != 1)
            throw InvalidOracle("deutsch_extended oracle malformed");
        for (std::uint64_t k = 0; k < 4; ++k)
            for (std::uint64_t x = 0; x < 2; ++x)
                if (oracle.table[k * 2 + x] != kDeutschTables[k][x])
                    throw InvalidOracle("deutsch_extended table mismatch");
        break;
    }
    case OracleFamily::grover_extended: {
        const int n = static_cast<int>(oracle.param("n"));
        if (oracle.in_bits != 2 * n || oracle.out_bits != 1)
            throw InvalidOracle("grover_extended oracle malformed");
        const std::uint64_t values = std::uint64_t{1} << n;
        for (std::uint64_t k = 0; k < values; ++k)
            for (std::uint64_t x = 0; x < values; ++x)
                if (oracle.table[(k << n) | x] != (x == k ? 1u : 0u))
                    throw InvalidOracle("grover_extended table mismatch");
        break;
    }
    }
}

OracleFunction make_xor_periodic(int n, std::uint64_t r, RandomSource& rng) {
    const std::uint64_t domain = std::uint64_t{1} << n;
    if (r == 0 || r >= domain)
        throw InvalidPeriod("r must satisfy 1 <= r < 2^n");

    // Fisher-Yates over the output alphabet; the first 2^(n-1) values become
    // the pair values, assigned to representatives in ascending order.
    std::vector<std::uint64_t> values(domain);
    std::iota(values.begin(), values.end(), 0);
    for (std::uint64_t i = domain - 1; i > 0; --i)
        std::swap(values[i], values[rng.uniform_below(i + 1)]);

    OracleFunction oracle{OracleFamily::xor_periodic, n, n, std::vector<std::uint64_t>(domain),
                          {{"r", r}}};
    std::uint64_t next = 0;
    for (std::uint64_t x = 0; x < domain; ++x) {
        if (x < (x ^ r)) {
            oracle.table[x] = values[next];
            oracle.table[x ^ r] = values[next];
            ++next;
        }
    }
    return oracle;
}

OracleFunction make_xor_periodic_sequential(int n, std::uint64_t r) {
    const std::uint64_t domain = std::uint64_t{1} << n;
    if (r == 0 || r >= domain)
        throw InvalidPeriod("r must satisfy 1 <= r < 2^n");
    OracleFunction oracle{OracleFamily::xor_periodic, n, n, std::vector<std::uint64_t>(domain),
                          {{"r", r}}};
    std::uint64_t next = 0;
    for (std::uint64_t x = 0; x < domain; ++x) {
        if (x < (x ^ r)) {
            oracle.table[x] = next;
            oracle.table[x ^ r] = next;
            ++next;
        }
    }
    return oracle;
}

OracleFunction make_modexp(std::uint64_t a, std::uint64_t L, int n) {
    if (std::gcd(a, L) != 1)
        throw NotCoprime("a and L must be coprime");
    if (a < 2 || a >= L)
        throw NotCoprime("require 2 <= a < L");
    const std::uint64_t domain = std::uint64_t{1} << n;
    OracleFunction oracle{OracleFamily::modexp, n, bit_length(L), std::vector<std::uint64_t>(domain),
                          {{"a", a}, {"L", L}}};
    std::uint64_t value = 1 % L;
    for (std::uint64_t x = 0; x < domain; ++x) {
        oracle.table[x] = value;
        value = value * a % L;
    }
    return oracle;
}

OracleFunction deutsch_oracle(int k) {
    if (k < 0 || k > 3) throw InvalidLabel("deutsch mode k must be one of 00, 01, 10, 11");
    return OracleFunction{OracleFamily::deutsch, 1, 1,
                          {kDeutschTables[k][0], kDeutschTables[k][1]},
                          {{"k", static_cast<std::uint64_t>(k)}}};
}

bool deutsch_balanced(int k) { return k == 1 || k == 2; }

OracleFunction grover_oracle(std::uint64_t k, int n) {
    const std::uint64_t domain = std::uint64_t{1} << n;
    if (k >= domain) throw InvalidLabel("grover target k out of range");
    OracleFunction oracle{OracleFamily::grover, n, 1, std::vector<std::uint64_t>(domain, 0),
                          {{"k", k}}};
    oracle.table[k] = 1;
    return oracle;
}

OracleFunction make_deutsch_extended() {
    OracleFunction oracle{OracleFamily::deutsch_extended, 3, 1, std::vector<std::uint64_t>(8), {}};
    for (std::uint64_t k = 0; k < 4; ++k)
        for (std::uint64_t x = 0; x < 2; ++x) oracle.table[k * 2 + x] = kDeutschTables[k][x];
    return oracle;
}

OracleFunction make_grover_extended(int n) {
    const std::uint64_t values = std::uint64_t{1} << n;
    OracleFunction oracle{OracleFamily::grover_extended, 2 * n, 1,
                          std::vector<std::uint64_t>(values * values, 0),
                          {{"n", static_cast<std::uint64_t>(n)}}};
    for (std::uint64_t k = 0; k < values; ++k) oracle.table[(k << n) | k] = 1;
    return oracle;
}

CollisionResult classical_collision_search(OracleFunction& oracle) {
    std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
    const std::uint64_t domain = oracle.domain_size();
    std::uint64_t queries = 0;
    for (std::uint64_t x = 0; x < domain; ++x) {
        const std::uint64_t f = oracle.query(x);
        ++queries;
        auto [it, inserted] = first_seen.emplace(f, x);
        if (!inserted) return CollisionResult{it->second, x, queries};
    }
    throw NoCollision("no colliding pair in the oracle's domain");
}

bool classical_deutsch_distinguish(OracleFunction& oracle) {
    return oracle.query(0) != oracle.query(1);
}

std::string oracle_to_json(const OracleFunction& oracle) {
    nlohmann::json doc;
    doc["family"] = std::string(family_name(oracle.family));
    doc["params"] = oracle.params;
    doc["in_bits"] = oracle.in_bits;
    doc["out_bits"] = oracle.out_bits;
    doc["table"] = oracle.table;
    return doc.dump();
}

OracleFunction oracle_from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    OracleFunction oracle;
    oracle.family = family_from_name(doc.at("family").get<std::string>());
    oracle.params = doc.at("params").get<std::map<std::string, std::uint64_t>>();
    oracle.in_bits = doc.at("in_bits").get<int>();
    oracle.out_bits = doc.at("out_bits").get<int>();
    oracle.table = doc.at("table").get<std::vector<std::uint64_t>>();
    validate_family(oracle);
    return oracle;
}

} // namespace vnmlab
