#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clonelab/errors.hpp"

namespace clonelab {

using Value = std::uint32_t;
using Tuple = std::vector<Value>;

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp);

// A finite domain {0, 1, ..., size-1}. Size 1 is legal.
class Domain {
public:
    explicit Domain(std::uint32_t size) : size_(size) {
        if (size == 0) throw ContractViolation("domain size must be at least 1");
    }
    std::uint32_t size() const { return size_; }
    bool contains(Value v) const { return v < size_; }
    friend bool operator==(const Domain& a, const Domain& b) { return a.size_ == b.size_; }

private:
    std::uint32_t size_;
};

// Bijection between argument tuples over a domain and flat table offsets.
// The last coordinate varies fastest: (0,...,0,0), (0,...,0,1), ...
class TupleIndex {
public:
    TupleIndex(const Domain& domain, std::uint32_t arity);
    std::uint64_t count() const { return count_; }
    std::uint32_t arity() const { return arity_; }
    std::uint32_t domain_size() const { return size_; }
    std::uint64_t encode(const Tuple& t) const;
    Tuple decode(std::uint64_t index) const;
    // In-place odometer step; returns false after the last tuple wraps to zero.
    bool next(Tuple& t) const;

private:
    std::uint32_t size_;
    std::uint32_t arity_;
    std::uint64_t count_;
};

// An n-ary operation on a finite domain, stored as a flat value table in
// TupleIndex order. Comparison is by (domain size, arity, table), which
// makes std::set<Operation> deterministic.
class Operation {
public:
    Operation(const Domain& domain, std::uint32_t arity, std::vector<Value> table);

    const Domain& domain() const { return domain_; }
    std::uint32_t arity() const { return arity_; }
    const std::vector<Value>& table() const { return table_; }

    Value evaluate(const Tuple& args) const;
    Value evaluate_encoded(std::uint64_t index) const { return table_[index]; }

    friend bool operator==(const Operation& a, const Operation& b) {
        return a.domain_ == b.domain_ && a.arity_ == b.arity_ && a.table_ == b.table_;
    }
    friend bool operator<(const Operation& a, const Operation& b);

private:
    Domain domain_;
    std::uint32_t arity_;
    std::vector<Value> table_;
};

// A k-ary relation on a finite domain: a set of k-tuples. May be empty.
class Relation {
public:
    Relation(const Domain& domain, std::uint32_t arity, std::set<Tuple> tuples);

    const Domain& domain() const { return domain_; }
    std::uint32_t arity() const { return arity_; }
    const std::set<Tuple>& tuples() const { return tuples_; }
    bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.domain_ == b.domain_ && a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
    }
    friend bool operator<(const Relation& a, const Relation& b);

private:
    Domain domain_;
    std::uint32_t arity_;
    std::set<Tuple> tuples_;
};

// True iff op applied coordinatewise to any arity(op) tuples of rel lands
// back in rel. An empty relation is preserved by everything.
bool preserves(const Operation& op, const Relation& rel);

Operation make_projection(const Domain& domain, std::uint32_t arity, std::uint32_t coordinate);
Operation make_constant(const Domain& domain, std::uint32_t arity, Value value);
Operation random_operation(const Domain& domain, std::uint32_t arity, std::mt19937_64& rng);

// A named bundle of operations and relations over one domain. Order of
// declaration is preserved so serialize/parse round-trips exactly.
struct Algebra {
    Domain domain{1};
    std::vector<std::pair<std::string, Operation>> operations;
    std::vector<std::pair<std::string, Relation>> relations;

    const Operation& operation(const std::string& name) const;
    const Relation& relation(const std::string& name) const;

    friend bool operator==(const Algebra& a, const Algebra& b) {
        return a.domain == b.domain && a.operations == b.operations && a.relations == b.relations;
    }
};

struct ParseLimits {
    // Largest op table accepted, i.e. size^arity entries.
    std::uint64_t max_table_entries = 1'000'000;
};

// Text format, one declaration per line, '#' starts a comment:
//   domain 3
//   op f 2 : 0 1 2 1 2 0 2 0 1
//   rel eq 2 : (0,0) (1,1) (2,2)
// Op tables list f's values with the last argument varying fastest.
Algebra parse_algebra(const std::string& text, const ParseLimits& limits = {});
std::string serialize_algebra(const Algebra& algebra);

} // namespace clonelab
