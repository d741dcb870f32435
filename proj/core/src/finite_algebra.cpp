#include "clonelab/finite_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace clonelab {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
        result *= base;
    }
    return result;
}

TupleIndex::TupleIndex(const Domain& domain, std::uint32_t arity)
    : size_(domain.size()), arity_(arity) {
    if (arity == 0) throw ContractViolation("arity must be at least 1");
    auto c = checked_pow(size_, arity);
    if (!c) throw CapExceeded("tuple space size^arity overflows 64 bits");
    count_ = *c;
}

std::uint64_t TupleIndex::encode(const Tuple& t) const {
    if (t.size() != arity_) throw ContractViolation("tuple length does not match arity");
    std::uint64_t index = 0;
    for (Value v : t) {
        if (v >= size_) throw ContractViolation("tuple entry outside domain");
        index = index * size_ + v;
    }
    return index;
}

Tuple TupleIndex::decode(std::uint64_t index) const {
    Tuple t(arity_);
    for (std::uint32_t i = arity_; i-- > 0;) {
        t[i] = static_cast<Value>(index % size_);
        index /= size_;
    }
    return t;
}

bool TupleIndex::next(Tuple& t) const {
    for (std::uint32_t i = arity_; i-- > 0;) {
        if (++t[i] < size_) return true;
        t[i] = 0;
    }
    return false;
}

Operation::Operation(const Domain& domain, std::uint32_t arity, std::vector<Value> table)
    : domain_(domain), arity_(arity), table_(std::move(table)) {
    TupleIndex index(domain, arity);
    if (table_.size() != index.count())
        throw ContractViolation("operation table has wrong length");
    for (Value v : table_)
        if (!domain.contains(v)) throw ContractViolation("operation table entry outside domain");
}

Value Operation::evaluate(const Tuple& args) const {
    return table_[TupleIndex(domain_, arity_).encode(args)];
}

bool operator<(const Operation& a, const Operation& b) {
    if (a.domain_.size() != b.domain_.size()) return a.domain_.size() < b.domain_.size();
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    return a.table_ < b.table_;
}

Relation::Relation(const Domain& domain, std::uint32_t arity, std::set<Tuple> tuples)
    : domain_(domain), arity_(arity), tuples_(std::move(tuples)) {
    if (arity == 0) throw ContractViolation("arity must be at least 1");
    for (const Tuple& t : tuples_) {
        if (t.size() != arity) throw ContractViolation("relation tuple has wrong length");
        for (Value v : t)
            if (!domain.contains(v)) throw ContractViolation("relation tuple entry outside domain");
    }
}

bool operator<(const Relation& a, const Relation& b) {
    if (a.domain().size() != b.domain().size()) return a.domain().size() < b.domain().size();
    if (a.arity() != b.arity()) return a.arity() < b.arity();
    return a.tuples() < b.tuples();
}

bool preserves(const Operation& op, const Relation& rel) {
    if (rel.tuples().empty()) return true;
    const std::vector<Tuple> rows(rel.tuples().begin(), rel.tuples().end());
    const std::uint32_t n = op.arity();
    const std::uint32_t m = rel.arity();

    // Odometer over all selections of n rows (with repetition).
    std::vector<std::size_t> pick(n, 0);
    Tuple args(n), image(m);
    while (true) {
        for (std::uint32_t c = 0; c < m; ++c) {
            for (std::uint32_t i = 0; i < n; ++i) args[i] = rows[pick[i]][c];
            image[c] = op.evaluate(args);
        }
        if (!rel.contains(image)) return false;

        std::uint32_t i = n;
        while (i-- > 0) {
            if (++pick[i] < rows.size()) break;
            pick[i] = 0;
            if (i == 0) return true;
        }
    }
}

Operation make_projection(const Domain& domain, std::uint32_t arity, std::uint32_t coordinate) {
    if (coordinate == 0 || coordinate > arity)
        throw ContractViolation("projection coordinate must be in 1..arity");
    TupleIndex index(domain, arity);
    std::vector<Value> table(index.count());
    Tuple t(arity, 0);
    std::uint64_t at = 0;
    do {
        table[at++] = t[coordinate - 1];
    } while (index.next(t));
    return Operation(domain, arity, std::move(table));
}

Operation make_constant(const Domain& domain, std::uint32_t arity, Value value) {
    if (!domain.contains(value)) throw ContractViolation("constant value outside domain");
    TupleIndex index(domain, arity);
    return Operation(domain, arity, std::vector<Value>(index.count(), value));
}

Operation random_operation(const Domain& domain, std::uint32_t arity, std::mt19937_64& rng) {
    TupleIndex index(domain, arity);
    std::vector<Value> table(index.count());
    for (auto& v : table) v = static_cast<Value>(rng() % domain.size());
    return Operation(domain, arity, std::move(table));
}

const Operation& Algebra::operation(const std::string& name) const {
    for (const auto& [n, op] : operations)
        if (n == name) return op;
    throw Error("unknown operation '" + name + "'");
}

const Relation& Algebra::relation(const std::string& name) const {
    for (const auto& [n, rel] : relations)
        if (n == name) return rel;
    throw Error("unknown relation '" + name + "'");
}

namespace {

std::uint64_t parse_uint(const std::string& token, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(std::string("expected ") + what + ", got '" + token + "'", line);
    return value;
}

Value parse_value(const std::string& token, const Domain& domain, std::size_t line) {
    std::uint64_t v = parse_uint(token, line, "a domain element");
    if (v >= domain.size())
        throw ParseError("value " + token + " outside domain of size " +
                             std::to_string(domain.size()),
                         line);
    return static_cast<Value>(v);
}

// Splits "(0,1) (2,3)" into tuples; tolerates spaces around digits and commas.
std::set<Tuple> parse_tuples(std::istringstream& in, const Domain& domain, std::uint32_t arity,
                             std::size_t line) {
    std::string rest;
    std::getline(in, rest);
    std::set<Tuple> tuples;
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
    };
    while (true) {
        skip_space();
        if (pos == rest.size()) break;
        if (rest[pos] != '(') throw ParseError("expected '(' starting a tuple", line);
        ++pos;
        Tuple t;
        while (true) {
            skip_space();
            std::size_t start = pos;
            while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) ++pos;
            if (start == pos) throw ParseError("expected a number inside tuple", line);
            t.push_back(parse_value(rest.substr(start, pos - start), domain, line));
            skip_space();
            if (pos == rest.size()) throw ParseError("unterminated tuple", line);
            if (rest[pos] == ',') {
                ++pos;
                continue;
            }
            if (rest[pos] == ')') {
                ++pos;
                break;
            }
            throw ParseError("expected ',' or ')' inside tuple", line);
        }
        if (t.size() != arity)
            throw ParseError("tuple has " + std::to_string(t.size()) + " entries, relation arity is " +
                                 std::to_string(arity),
                             line);
        tuples.insert(std::move(t));
    }
    return tuples;
}

} // namespace

Algebra parse_algebra(const std::string& text, const ParseLimits& limits) {
    std::istringstream lines(text);
    std::string raw;
    std::size_t line_no = 0;
    std::optional<Domain> domain;
    Algebra algebra;

    while (std::getline(lines, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream in(raw);
        std::string keyword;
        if (!(in >> keyword)) continue;

        if (keyword == "domain") {
            if (domain) throw ParseError("duplicate domain declaration", line_no);
            std::string token;
            if (!(in >> token)) throw ParseError("expected domain size", line_no);
            std::uint64_t size = parse_uint(token, line_no, "domain size");
            if (size == 0) throw ParseError("domain size must be at least 1", line_no);
            if (size > UINT32_MAX) throw ParseError("domain size too large", line_no);
            domain = Domain(static_cast<std::uint32_t>(size));
            algebra.domain = *domain;
            continue;
        }
        if (!domain) throw ParseError("domain must be declared before '" + keyword + "'", line_no);

        std::string name, token;
        if (!(in >> name)) throw ParseError("expected a name after '" + keyword + "'", line_no);
        if (!(in >> token)) throw ParseError("expected an arity", line_no);
        std::uint64_t arity = parse_uint(token, line_no, "an arity");
        if (arity == 0) throw ParseError("arity must be at least 1", line_no);
        if (arity > UINT32_MAX) throw ParseError("arity too large", line_no);
        if (!(in >> token) || token != ":") throw ParseError("expected ':'", line_no);

        if (keyword == "op") {
            for (const auto& [existing, op] : algebra.operations)
                if (existing == name) throw ParseError("duplicate op name '" + name + "'", line_no);
            auto entries = checked_pow(domain->size(), arity);
            if (!entries || *entries > limits.max_table_entries)
                throw CapExceeded("op '" + name + "' needs a table larger than the cap of " +
                                  std::to_string(limits.max_table_entries) + " entries");
            std::vector<Value> table;
            table.reserve(*entries);
            while (in >> token) table.push_back(parse_value(token, *domain, line_no));
            if (table.size() != *entries)
                throw ParseError("op '" + name + "' lists " + std::to_string(table.size()) +
                                     " values, expected " + std::to_string(*entries),
                                 line_no);
            algebra.operations.emplace_back(
                name, Operation(*domain, static_cast<std::uint32_t>(arity), std::move(table)));
        } else if (keyword == "rel") {
            for (const auto& [existing, rel] : algebra.relations)
                if (existing == name) throw ParseError("duplicate rel name '" + name + "'", line_no);
            auto tuples = parse_tuples(in, *domain, static_cast<std::uint32_t>(arity), line_no);
            algebra.relations.emplace_back(
                name, Relation(*domain, static_cast<std::uint32_t>(arity), std::move(tuples)));
        } else {
            throw ParseError("unknown keyword '" + keyword + "'", line_no);
        }
    }
    if (!domain) throw ParseError("input declares no domain");
    return algebra;
}

std::string serialize_algebra(const Algebra& algebra) {
    std::ostringstream out;
    out << "domain " << algebra.domain.size() << '\n';
    for (const auto& [name, op] : algebra.operations) {
        out << "op " << name << ' ' << op.arity() << " :";
        for (Value v : op.table()) out << ' ' << v;
        out << '\n';
    }
    for (const auto& [name, rel] : algebra.relations) {
        out << "rel " << name << ' ' << rel.arity() << " :";
        for (const Tuple& t : rel.tuples()) {
            out << " (";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out << ',';
                out << t[i];
            }
            out << ')';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace clonelab
