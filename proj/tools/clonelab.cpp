#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clonelab/acceptance.hpp"
#include "clonelab/clone_engine.hpp"
#include "clonelab/countable_universe.hpp"
#include "clonelab/equality_base.hpp"
#include "clonelab/errors.hpp"
#include "clonelab/finite_algebra.hpp"
#include "clonelab/galois.hpp"

namespace {

using clonelab::Operation;
using clonelab::Relation;
using clonelab::Tuple;

constexpr std::uint64_t kPrefixUnset = ~std::uint64_t(0);

// Buffered, insertion-ordered output. Text mode prints one "key: value"
// line per scalar and one line per array element; --json dumps the same
// record as a single object. Buffering keeps output byte-stable.
struct Emitter {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();

    void set(const std::string& key, const nlohmann::ordered_json& value) { doc[key] = value; }
    void add(const std::string& key, const nlohmann::ordered_json& value) {
        if (!doc.contains(key)) doc[key] = nlohmann::ordered_json::array();
        doc[key].push_back(value);
    }

    static std::string text_of(const nlohmann::ordered_json& value) {
        return value.is_string() ? value.get<std::string>() : value.dump();
    }

    void print(bool as_json) const {
        if (as_json) {
            std::cout << doc.dump(2) << "\n";
            return;
        }
        for (const auto& [key, value] : doc.items()) {
            if (value.is_array())
                for (const auto& element : value) std::cout << key << ": " << text_of(element) << "\n";
            else
                std::cout << key << ": " << text_of(value) << "\n";
        }
    }
};

struct Config {
    std::string algebra_path;
    std::string op_name;
    std::string base_rel;
    std::string dot_name = "dot", ldiv_name = "ldiv", rdiv_name = "rdiv";
    std::string contains_name;
    std::vector<std::string> names;
    std::string first_name, second_name;
    std::vector<std::uint64_t> naturals;
    std::vector<long long> roots;
    std::uint32_t arity = 1;
    std::uint32_t coord = 1;
    std::uint32_t k = 1;
    std::uint32_t size_cap = 0;  // 0: unlimited exact search
    std::uint64_t cap = clonelab::kDefaultEnumerationCap;
    std::uint64_t budget = 100'000;
    std::uint64_t steps = 10;
    std::uint64_t seed = 0;
    std::uint64_t acceptance_seed = 424242;
    std::uint64_t prefix = kPrefixUnset;
    std::optional<std::uint64_t> parity_index;
    int criterion = 0;  // 0: every criterion
    bool sampled = false;
    bool json = false;
    bool list_members = false;
    bool exhaustive = false;
    bool mutate_compose = false;
    bool times = false;
};

clonelab::GaloisOptions galois_opts(const Config& cfg) {
    clonelab::GaloisOptions opts;
    opts.enumeration_cap = cfg.cap;
    opts.sampled = cfg.sampled;
    opts.seed = cfg.seed;
    return opts;
}

clonelab::Algebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw clonelab::ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return clonelab::parse_algebra(buffer.str());
}

std::string tuple_text(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

// Same shape the algebra parser accepts, so printed tables can be fed back in.
std::string op_text(const std::string& name, const Operation& op) {
    std::string s = "op " + name + " " + std::to_string(op.arity()) + " :";
    for (auto v : op.table()) s += " " + std::to_string(v);
    return s;
}

std::string rel_text(const std::string& name, const Relation& rel) {
    std::string s = "rel " + name + " " + std::to_string(rel.arity()) + " :";
    for (const auto& t : rel.tuples()) s += " " + tuple_text(t);
    return s;
}

std::vector<Operation> all_operations(const clonelab::Algebra& alg) {
    std::vector<Operation> ops;
    ops.reserve(alg.operations.size());
    for (const auto& [name, op] : alg.operations) ops.push_back(op);
    return ops;
}

clonelab::FunctionFamily family_at_arity(const clonelab::Algebra& alg, std::uint32_t arity) {
    clonelab::FunctionFamily family{alg.domain, arity, {}, false};
    for (const auto& [name, op] : alg.operations)
        if (op.arity() == arity) family.members.insert(op);
    return family;
}

clonelab::BaseSet base_from_relation(const clonelab::Algebra& alg, const std::string& rel_name) {
    const Relation& rel = alg.relation(rel_name);
    return clonelab::BaseSet{alg.domain, rel.arity(), rel.tuples()};
}

void header(Emitter& out, const std::string& command, std::uint64_t seed) {
    out.set("command", command);
    out.set("seed", seed);
}

void emit_separation(Emitter& out, const clonelab::SeparationCertificate& cert) {
    out.set("separating_f", op_text("f", cert.f));
    out.set("separating_g", op_text("g", cert.g));
    out.set("differ_at", tuple_text(cert.differ_at));
}

int run_pol(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    clonelab::RelationFamily relations{alg.domain, {}, false};
    for (const auto& [name, rel] : alg.relations) relations.members.insert(rel);
    auto family = clonelab::polymorphisms(relations, cfg.arity, galois_opts(cfg));

    Emitter out;
    header(out, "pol", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("relations", relations.members.size());
    out.set("sampled", family.sampled);
    out.set("count", family.members.size());
    std::size_t i = 0;
    for (const auto& op : family.members) out.add("op", op_text("f" + std::to_string(i++), op));
    out.print(cfg.json);
    return 0;
}

int run_inv(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto ops = all_operations(alg);
    auto family = clonelab::invariant_relations(ops, alg.domain, cfg.k, galois_opts(cfg));

    Emitter out;
    header(out, "inv", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("k", cfg.k);
    out.set("operations", ops.size());
    out.set("sampled", family.sampled);
    out.set("count", family.members.size());
    std::size_t i = 0;
    for (const auto& rel : family.members) out.add("rel", rel_text("r" + std::to_string(i++), rel));
    out.print(cfg.json);
    return 0;
}

int run_loc_member(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    const Operation& f = alg.operation(cfg.op_name);
    clonelab::FunctionFamily family{alg.domain, f.arity(), {}, false};
    for (const auto& [name, op] : alg.operations)
        if (name != cfg.op_name && op.arity() == f.arity()) family.members.insert(op);

    auto check = clonelab::lo_k_member(f, family, cfg.k);

    Emitter out;
    header(out, "loc member", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("op", cfg.op_name);
    out.set("k", cfg.k);
    out.set("family_size", family.members.size());
    out.set("member", check.interpolable);
    for (const auto& t : check.violating_subset) out.add("violating_point", tuple_text(t));
    out.print(cfg.json);
    return check.interpolable ? 0 : 1;
}

int run_loc_family(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto family = family_at_arity(alg, cfg.arity);
    auto closure = clonelab::lo_k_family(family, cfg.k, galois_opts(cfg));

    Emitter out;
    header(out, "loc family", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("k", cfg.k);
    out.set("family_size", family.members.size());
    out.set("sampled", closure.sampled);
    out.set("count", closure.members.size());
    std::size_t i = 0;
    for (const auto& op : closure.members) out.add("op", op_text("f" + std::to_string(i++), op));
    out.print(cfg.json);
    return 0;
}

int run_loc_compact(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto family = family_at_arity(alg, cfg.arity);
    auto n = clonelab::compactness_scan(family, galois_opts(cfg));

    Emitter out;
    header(out, "loc compact", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("family_size", family.members.size());
    out.set("n", n);
    out.print(cfg.json);
    return 0;
}

int run_clone_gen(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    std::vector<Operation> generators;
    for (const auto& [name, op] : alg.operations)
        if (name != cfg.contains_name) generators.push_back(op);

    auto clone = clonelab::generate_clone(alg.domain, generators, cfg.arity,
                                          clonelab::SaturationBudget{cfg.budget});

    Emitter out;
    header(out, "clone-gen", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("generators", generators.size());
    out.set("max_arity", cfg.arity);
    for (std::uint32_t m = 1; m <= cfg.arity; ++m) {
        const std::string label = "arity_" + std::to_string(m);
        out.set(label + "_count", clone.members_unchecked(m).size());
        out.set(label + "_complete", clone.complete(m));
    }
    if (clone.complete(1)) out.set("constantive", clonelab::is_constantive(clone));
    if (cfg.list_members) {
        for (std::uint32_t m = 1; m <= cfg.arity; ++m) {
            std::size_t i = 0;
            for (const auto& op : clone.members_unchecked(m))
                out.add("op", op_text("m" + std::to_string(m) + "_" + std::to_string(i++), op));
        }
    }

    int exit_code = 0;
    if (!cfg.contains_name.empty()) {
        // The named table is excluded from the generators above, so this
        // answers whether the remaining operations generate it.
        bool contained = clone.contains(alg.operation(cfg.contains_name));
        out.set("contains", contained);
        exit_code = contained ? 0 : 1;
    }
    out.print(cfg.json);
    return exit_code;
}

int run_base_check(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto D = base_from_relation(alg, cfg.base_rel);
    auto family = family_at_arity(alg, cfg.arity);
    auto check = clonelab::is_base_of_equality(D, family);

    Emitter out;
    header(out, "base check", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("base_size", D.points.size());
    out.set("family_size", family.members.size());
    out.set("is_base", check.is_base);
    if (check.violation) emit_separation(out, *check.violation);
    out.print(cfg.json);
    return check.is_base ? 0 : 1;
}

int run_base_find(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto family = family_at_arity(alg, cfg.arity);
    auto result = cfg.size_cap > 0
                      ? clonelab::find_minimal_base(family, cfg.size_cap, galois_opts(cfg))
                      : clonelab::find_minimal_base(family, galois_opts(cfg));

    Emitter out;
    header(out, "base find", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("family_size", family.members.size());
    out.set("size", result.base.points.size());
    out.set("minimal", result.minimal);
    out.set("absent_under_cap", result.absent_under_cap);
    for (const auto& t : result.base.points) out.add("point", tuple_text(t));
    out.print(cfg.json);
    return 0;
}

int run_base_bound(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto D = base_from_relation(alg, cfg.base_rel);
    auto clone = clonelab::generate_clone(alg.domain, all_operations(alg), cfg.arity,
                                          clonelab::SaturationBudget{cfg.budget});
    auto report = clonelab::equality_base_bound_verify(clone, cfg.arity, D, galois_opts(cfg));

    Emitter out;
    header(out, "base bound", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("base_size", D.points.size());
    out.set("k", report.k);
    out.set("base_precondition_ok", report.base_precondition_ok);
    if (report.precondition_violation) emit_separation(out, *report.precondition_violation);
    out.set("equal", report.equal);
    if (report.witness) out.set("witness", op_text("w", *report.witness));
    out.print(cfg.json);
    return report.base_precondition_ok && report.equal ? 0 : 1;
}

int run_base_project(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto D = base_from_relation(alg, cfg.base_rel);
    auto clone = clonelab::generate_clone(alg.domain, all_operations(alg), cfg.arity,
                                          clonelab::SaturationBudget{cfg.budget});
    auto report = clonelab::verify_projected_base(clone, cfg.arity, D, galois_opts(cfg));

    Emitter out;
    header(out, "base project", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("base_size", D.points.size());
    out.set("premise_ok", report.premise_ok);
    out.set("premise_full_domain", report.premise_full_domain);
    out.set("projected_ok", report.projected_ok);
    for (const auto& t : report.projected.points) out.add("projected_point", tuple_text(t));
    if (report.failure) emit_separation(out, *report.failure);
    out.print(cfg.json);
    return report.premise_ok && report.projected_ok ? 0 : 1;
}

int run_base_power(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto D = base_from_relation(alg, cfg.base_rel);
    auto clone = clonelab::generate_clone(alg.domain, all_operations(alg), cfg.arity,
                                          clonelab::SaturationBudget{cfg.budget});
    auto report = clonelab::verify_power_base(clone, D, cfg.arity, galois_opts(cfg));

    Emitter out;
    header(out, "base power", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("base_size", D.points.size());
    out.set("constantive", report.constantive);
    out.set("premise_ok", report.premise_ok);
    out.set("power_ok", report.power_ok);
    out.set("power_full_domain", report.power_full_domain);
    out.set("power_size", report.power.points.size());
    if (report.failure) emit_separation(out, *report.failure);
    out.print(cfg.json);
    return report.premise_ok && report.power_ok ? 0 : 1;
}

int run_quasigroup_check(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto check = clonelab::check_quasigroup(alg.operation(cfg.dot_name), alg.operation(cfg.ldiv_name),
                                            alg.operation(cfg.rdiv_name));

    Emitter out;
    header(out, "quasigroup check", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("ok", check.ok);
    if (!check.ok) {
        out.set("failed_law", check.failed_law);
        out.set("point", tuple_text(check.point));
    }
    out.print(cfg.json);
    return check.ok ? 0 : 1;
}

int run_quasigroup_find(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto clone = clonelab::generate_clone(alg.domain, all_operations(alg), 2,
                                          clonelab::SaturationBudget{cfg.budget});
    auto triple = clonelab::find_quasigroup_ops(clone);

    Emitter out;
    header(out, "quasigroup find", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("found", triple.has_value());
    if (triple) {
        out.set("dot", op_text("dot", triple->dot));
        out.set("ldiv", op_text("ldiv", triple->ldiv));
        out.set("rdiv", op_text("rdiv", triple->rdiv));
    }
    out.print(cfg.json);
    return triple ? 0 : 1;
}

int run_quasigroup_latin(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    bool latin = clonelab::is_latin_square(alg.operation(cfg.op_name));

    Emitter out;
    header(out, "quasigroup latin", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("op", cfg.op_name);
    out.set("latin", latin);
    out.print(cfg.json);
    return latin ? 0 : 1;
}

int run_galois_check(const Config& cfg) {
    auto alg = load_algebra(cfg.algebra_path);
    auto clone = clonelab::generate_clone(alg.domain, all_operations(alg), cfg.arity,
                                          clonelab::SaturationBudget{cfg.budget});
    auto report = clonelab::local_interpolation_check(clone, cfg.arity, cfg.k, galois_opts(cfg));

    Emitter out;
    header(out, "galois-check", cfg.seed);
    out.set("algebra", cfg.algebra_path);
    out.set("arity", cfg.arity);
    out.set("k", cfg.k);
    out.set("interpolation_route", report.interpolation_route.members.size());
    out.set("preservation_route", report.preservation_route.members.size());
    out.set("equal", report.equal);
    if (report.witness) out.set("witness", op_text("w", *report.witness));
    out.print(cfg.json);
    return report.equal ? 0 : 1;
}

int run_universe_eval(const Config& cfg) {
    namespace uni = clonelab::universe;
    const std::uint64_t bound = cfg.prefix == kPrefixUnset ? 6 : cfg.prefix;

    Emitter out;
    header(out, "universe eval", cfg.seed);
    out.set("inputs", bound);
    for (const auto& name : cfg.names) {
        auto f = uni::parse_symbolic(name);
        std::string row = f.name();
        for (uni::Nat x = 0; x < bound; ++x) row += " " + std::to_string(f(x));
        out.add("row", row);
    }
    out.print(cfg.json);
    return 0;
}

int run_universe_compose(const Config& cfg) {
    namespace uni = clonelab::universe;
    auto f = uni::parse_symbolic(cfg.first_name);
    auto g = uni::parse_symbolic(cfg.second_name);
    auto composed = uni::compose(f, g);
    const std::uint64_t bound = cfg.prefix == kPrefixUnset ? 100 : cfg.prefix;

    std::optional<uni::Nat> mismatch;
    for (uni::Nat x = 0; x < bound && !mismatch; ++x)
        if (composed(x) != f(g(x))) mismatch = x;

    Emitter out;
    header(out, "universe compose", cfg.seed);
    out.set("f", f.name());
    out.set("g", g.name());
    out.set("result", composed.name());
    out.set("checked", bound);
    out.set("verified", !mismatch);
    if (mismatch) {
        out.set("mismatch_at", *mismatch);
        out.set("closed_form", composed(*mismatch));
        out.set("pointwise", f(g(*mismatch)));
    }
    out.print(cfg.json);
    return mismatch ? 1 : 0;
}

int run_universe_member(const Config& cfg) {
    namespace uni = clonelab::universe;
    uni::SymbolicOp op{cfg.arity, cfg.coord, uni::parse_symbolic(cfg.first_name)};
    bool member = uni::in_generated_clone(op);

    Emitter out;
    header(out, "universe member", cfg.seed);
    out.set("core", op.core.name());
    out.set("arity", cfg.arity);
    out.set("coordinate", cfg.coord);
    out.set("member", member);
    out.print(cfg.json);
    return member ? 0 : 1;
}

int run_universe_interpolate(const Config& cfg) {
    namespace uni = clonelab::universe;
    std::set<uni::Nat> B(cfg.naturals.begin(), cfg.naturals.end());
    auto result = uni::interpolate_parity(B);

    bool verified = true;
    const auto parity = uni::SymbolicUnary::parity();
    for (auto b : B)
        if (result.interpolant(b) != parity(b)) verified = false;

    Emitter out;
    header(out, "universe interpolate", cfg.seed);
    out.set("set_size", B.size());
    out.set("interpolant", result.interpolant.name());
    out.set("empty_set_convention", result.empty_set_convention);
    out.set("verified", verified);
    out.print(cfg.json);
    return verified ? 0 : 1;
}

int run_universe_no_base(const Config& cfg) {
    namespace uni = clonelab::universe;
    std::set<uni::Nat> D(cfg.naturals.begin(), cfg.naturals.end());
    auto witness = uni::no_finite_base_witness(D);

    Emitter out;
    header(out, "universe no-base", cfg.seed);
    out.set("set_size", D.size());
    out.set("first", witness.first.name());
    out.set("second", witness.second.name());
    out.set("divergence_point", witness.divergence_point);
    out.set("verified", witness.verified);
    out.print(cfg.json);
    return witness.verified ? 0 : 1;
}

int run_universe_rho(const Config& cfg) {
    namespace uni = clonelab::universe;
    uni::SymbolicOp op{cfg.arity, cfg.coord, uni::parse_symbolic(cfg.first_name)};
    const uni::Nat bound = cfg.prefix == kPrefixUnset ? 8 : cfg.prefix;
    bool preserved = uni::rho_preserves(op, bound);

    Emitter out;
    header(out, "universe rho", cfg.seed);
    out.set("core", op.core.name());
    out.set("arity", cfg.arity);
    out.set("coordinate", cfg.coord);
    out.set("bound", bound);
    out.set("preserved", preserved);
    out.print(cfg.json);
    return preserved ? 0 : 1;
}

int run_universe_diagonalize(const Config& cfg) {
    namespace uni = clonelab::universe;
    auto trace = uni::diagonalize(cfg.steps, cfg.parity_index);
    auto enumeration = uni::default_enumeration(cfg.parity_index ? *cfg.parity_index : cfg.steps);
    auto audit = uni::audit_trace(trace, enumeration);

    Emitter out;
    header(out, "universe diagonalize", cfg.seed);
    out.set("steps", cfg.steps);
    out.set("enumeration", enumeration.description);
    for (const auto& step : trace.steps)
        out.add("step", std::to_string(step.k) + " " + std::to_string(step.window) + " " +
                            step.chosen.name() + " " + uni::branch_name(step.branch));
    std::string prefix;
    for (std::size_t i = 0; i < trace.limit_prefix.size(); ++i)
        prefix += (i ? " " : "") + std::to_string(trace.limit_prefix[i]);
    out.set("limit_prefix", prefix);
    out.set("limit_matches_parity", trace.limit_matches_parity);
    out.set("audit", audit.ok);
    if (!audit.ok) out.set("audit_detail", audit.detail);
    out.print(cfg.json);
    return audit.ok ? 0 : 1;
}

int run_integral_domain(const Config& cfg) {
    auto witness = clonelab::integral_domain_witness(cfg.roots);

    bool verified = witness.value != 0;
    for (auto root : cfg.roots)
        if (clonelab::evaluate_polynomial(witness.coefficients, clonelab::BigInt(root)) != 0)
            verified = false;

    Emitter out;
    header(out, "integral-domain", cfg.seed);
    std::string roots;
    for (std::size_t i = 0; i < witness.roots.size(); ++i)
        roots += (i ? " " : "") + std::to_string(witness.roots[i]);
    out.set("roots", roots);
    out.set("degree", witness.roots.size());
    std::string coeffs;
    for (std::size_t i = 0; i < witness.coefficients.size(); ++i)
        coeffs += (i ? " " : "") + witness.coefficients[i].str();
    out.set("coefficients_ascending", coeffs);
    out.set("evaluation_point", witness.evaluation_point.str());
    out.set("value", witness.value.str());
    out.set("verified", verified);
    out.print(cfg.json);
    return verified ? 0 : 1;
}

int run_verify_all(const Config& cfg) {
    namespace uni = clonelab::universe;
    clonelab::AcceptanceOptions options;
    options.seed = cfg.acceptance_seed;
    options.enumeration_cap = cfg.cap;
    options.budget = cfg.budget;
    if (cfg.mutate_compose) {
        // Deliberate corruption for exercising the failure path: the
        // step/step rule keeps the smaller threshold instead of the larger.
        options.compose = [](const uni::SymbolicUnary& f, const uni::SymbolicUnary& g) {
            using Kind = uni::SymbolicUnary::Kind;
            if (f.kind() == Kind::Step && g.kind() == Kind::Step)
                return uni::SymbolicUnary::step(std::min(f.parameter(), g.parameter()));
            return uni::compose(f, g);
        };
    }

    std::vector<clonelab::CriterionResult> results;
    if (cfg.criterion != 0)
        results.push_back(clonelab::run_criterion(cfg.criterion, options));
    else
        results = clonelab::run_acceptance(options);

    Emitter out;
    header(out, "verify-all", cfg.acceptance_seed);
    if (cfg.mutate_compose) out.set("mutated", "compose");
    int passed = 0;
    for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        std::string line =
            std::to_string(r.number) + " " + (r.passed ? "PASS" : "FAIL") + " " + r.name;
        if (cfg.times) {
            char timing[64];
            std::snprintf(timing, sizeof timing, " (%.2fs, limit %.0fs)", r.seconds,
                          r.limit_seconds);
            line += timing;
        }
        out.add("criterion", line);
        if (!r.passed) out.add("detail", std::to_string(r.number) + " " + r.detail);
    }
    out.set("passed", passed);
    out.set("total", results.size());
    bool all = passed == static_cast<int>(results.size());
    out.set("ok", all);
    out.print(cfg.json);
    return all ? 0 : 1;
}

void add_output_options(CLI::App* sub, Config& cfg) {
    sub->add_flag("--json", cfg.json, "emit the record as a single JSON object");
    sub->add_option("--seed", cfg.seed, "seed recorded in the output and used by sampled modes");
}

CLI::Option* add_cap_option(CLI::App* sub, Config& cfg) {
    return sub->add_option("--cap", cfg.cap, "enumeration cap before giving up or sampling")
        ->envname("CLONELAB_CAP");
}

void add_sampled_option(CLI::App* sub, Config& cfg) {
    sub->add_flag("--sampled", cfg.sampled, "sample candidates instead of failing past the cap");
}

void add_algebra_option(CLI::App* sub, Config& cfg) {
    sub->add_option("--algebra", cfg.algebra_path, "path to an algebra file")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clone computations on finite domains and a countable counterexample universe"};
    app.require_subcommand(1);
    Config cfg;
    int exit_code = 0;

    auto* pol = app.add_subcommand("pol", "operations preserving every relation in the file");
    add_algebra_option(pol, cfg);
    pol->add_option("--arity", cfg.arity, "arity of the candidate operations");
    add_cap_option(pol, cfg);
    add_sampled_option(pol, cfg);
    add_output_options(pol, cfg);
    pol->callback([&] { exit_code = run_pol(cfg); });

    auto* inv = app.add_subcommand("inv", "relations preserved by every operation in the file");
    add_algebra_option(inv, cfg);
    inv->add_option("--k", cfg.k, "arity of the candidate relations");
    add_cap_option(inv, cfg);
    add_sampled_option(inv, cfg);
    add_output_options(inv, cfg);
    inv->callback([&] { exit_code = run_inv(cfg); });

    auto* loc = app.add_subcommand("loc", "interpolation closures of finite families");
    loc->require_subcommand(1);

    auto* loc_member = loc->add_subcommand(
        "member", "can the named operation be interpolated from the others on k points at a time");
    add_algebra_option(loc_member, cfg);
    loc_member->add_option("--op", cfg.op_name, "operation to test; the rest form the family")
        ->required();
    loc_member->add_option("--k", cfg.k, "number of argument tuples per interpolation demand");
    add_output_options(loc_member, cfg);
    loc_member->callback([&] { exit_code = run_loc_member(cfg); });

    auto* loc_family = loc->add_subcommand("family", "every operation interpolable from the family");
    add_algebra_option(loc_family, cfg);
    loc_family->add_option("--arity", cfg.arity, "arity of the family");
    loc_family->add_option("--k", cfg.k, "number of argument tuples per interpolation demand");
    add_cap_option(loc_family, cfg);
    add_sampled_option(loc_family, cfg);
    add_output_options(loc_family, cfg);
    loc_family->callback([&] { exit_code = run_loc_family(cfg); });

    auto* loc_compact =
        loc->add_subcommand("compact", "least n at which the n-point closure fixes the family");
    add_algebra_option(loc_compact, cfg);
    loc_compact->add_option("--arity", cfg.arity, "arity of the family");
    add_cap_option(loc_compact, cfg);
    add_output_options(loc_compact, cfg);
    loc_compact->callback([&] { exit_code = run_loc_compact(cfg); });

    auto* clone_gen =
        app.add_subcommand("clone-gen", "saturate the clone generated by the file's operations");
    add_algebra_option(clone_gen, cfg);
    clone_gen->add_option("--arity", cfg.arity, "largest arity to saturate");
    clone_gen->add_option("--budget", cfg.budget, "largest member count per arity");
    clone_gen->add_option("--contains", cfg.contains_name,
                          "test whether this operation is generated by the remaining ones");
    clone_gen->add_flag("--list", cfg.list_members, "print every member table");
    add_output_options(clone_gen, cfg);
    clone_gen->callback([&] { exit_code = run_clone_gen(cfg); });

    auto* base = app.add_subcommand("base", "finite sets of tuples that pin functions down");
    base->require_subcommand(1);

    auto* base_check = base->add_subcommand(
        "check", "is the named relation a base of equality for the file's operations");
    add_algebra_option(base_check, cfg);
    base_check->add_option("--arity", cfg.arity, "arity of the function family");
    base_check->add_option("--base-rel", cfg.base_rel, "relation holding the candidate points")
        ->required();
    add_output_options(base_check, cfg);
    base_check->callback([&] { exit_code = run_base_check(cfg); });

    auto* base_find =
        base->add_subcommand("find", "smallest base of equality for the file's operations");
    add_algebra_option(base_find, cfg);
    base_find->add_option("--arity", cfg.arity, "arity of the function family");
    base_find->add_option("--size-cap", cfg.size_cap, "bound on the exact search (0: unlimited)");
    add_cap_option(base_find, cfg);
    add_output_options(base_find, cfg);
    base_find->callback([&] { exit_code = run_base_find(cfg); });

    auto* base_bound = base->add_subcommand(
        "bound", "verify that a base of size s makes the clone part (s+1)-interpolation closed");
    add_algebra_option(base_bound, cfg);
    base_bound->add_option("--arity", cfg.arity, "arity of the clone part under test");
    base_bound->add_option("--base-rel", cfg.base_rel, "relation holding the base points")
        ->required();
    base_bound->add_option("--budget", cfg.budget, "saturation budget per arity");
    add_cap_option(base_bound, cfg);
    add_output_options(base_bound, cfg);
    base_bound->callback([&] { exit_code = run_base_bound(cfg); });

    auto* base_project = base->add_subcommand(
        "project", "first-coordinate projection of a base stays a base at arity one");
    add_algebra_option(base_project, cfg);
    base_project->add_option("--arity", cfg.arity, "arity of the clone part the base covers");
    base_project->add_option("--base-rel", cfg.base_rel, "relation holding the base points")
        ->required();
    base_project->add_option("--budget", cfg.budget, "saturation budget per arity");
    add_cap_option(base_project, cfg);
    add_output_options(base_project, cfg);
    base_project->callback([&] { exit_code = run_base_project(cfg); });

    auto* base_power = base->add_subcommand(
        "power", "Cartesian power of a unary base covers the higher arity, given all constants");
    add_algebra_option(base_power, cfg);
    base_power->add_option("--arity", cfg.arity, "target arity (the power exponent)");
    base_power->add_option("--base-rel", cfg.base_rel, "unary relation holding the base points")
        ->required();
    base_power->add_option("--budget", cfg.budget, "saturation budget per arity");
    add_cap_option(base_power, cfg);
    add_output_options(base_power, cfg);
    base_power->callback([&] { exit_code = run_base_power(cfg); });

    auto* quasigroup = app.add_subcommand("quasigroup", "cancellation structure on binary tables");
    quasigroup->require_subcommand(1);

    auto* qg_check = quasigroup->add_subcommand("check", "verify the four cancellation laws");
    add_algebra_option(qg_check, cfg);
    qg_check->add_option("--dot", cfg.dot_name, "multiplication table name");
    qg_check->add_option("--ldiv", cfg.ldiv_name, "left division table name");
    qg_check->add_option("--rdiv", cfg.rdiv_name, "right division table name");
    add_output_options(qg_check, cfg);
    qg_check->callback([&] { exit_code = run_quasigroup_check(cfg); });

    auto* qg_find = quasigroup->add_subcommand(
        "find", "search the generated binary members for a cancellation triple");
    add_algebra_option(qg_find, cfg);
    qg_find->add_option("--budget", cfg.budget, "saturation budget per arity");
    add_output_options(qg_find, cfg);
    qg_find->callback([&] { exit_code = run_quasigroup_find(cfg); });

    auto* qg_latin = quasigroup->add_subcommand("latin", "is the named table a Latin square");
    add_algebra_option(qg_latin, cfg);
    qg_latin->add_option("--op", cfg.op_name, "binary operation name")->required();
    add_output_options(qg_latin, cfg);
    qg_latin->callback([&] { exit_code = run_quasigroup_latin(cfg); });

    auto* galois_check = app.add_subcommand(
        "galois-check", "interpolation closure equals invariant-preservation closure");
    add_algebra_option(galois_check, cfg);
    galois_check->add_option("--arity", cfg.arity, "arity of the clone part under test");
    galois_check->add_option("--k", cfg.k, "interpolation demand size and invariant arity");
    galois_check->add_option("--budget", cfg.budget, "saturation budget per arity");
    add_cap_option(galois_check, cfg);
    add_sampled_option(galois_check, cfg);
    add_output_options(galois_check, cfg);
    galois_check->callback([&] { exit_code = run_galois_check(cfg); });

    auto* universe =
        app.add_subcommand("universe", "the symbolic clone on the naturals and its diagonalization");
    universe->require_subcommand(1);

    auto* uni_eval = universe->add_subcommand("eval", "value rows of symbolic functions");
    uni_eval->add_option("names", cfg.names, "function names, e.g. id p c_2 g_5")->required();
    uni_eval->add_option("--prefix", cfg.prefix, "number of inputs, starting at 0");
    add_output_options(uni_eval, cfg);
    uni_eval->callback([&] { exit_code = run_universe_eval(cfg); });

    auto* uni_compose =
        universe->add_subcommand("compose", "closed-form composition, cross-checked pointwise");
    uni_compose->add_option("f", cfg.first_name, "outer function")->required();
    uni_compose->add_option("g", cfg.second_name, "inner function")->required();
    uni_compose->add_option("--prefix", cfg.prefix, "pointwise cross-check bound");
    add_output_options(uni_compose, cfg);
    uni_compose->callback([&] { exit_code = run_universe_compose(cfg); });

    auto* uni_member =
        universe->add_subcommand("member", "membership in the clone of constants and steps");
    uni_member->add_option("name", cfg.first_name, "core function name")->required();
    uni_member->add_option("--arity", cfg.arity, "operation arity");
    uni_member->add_option("--coord", cfg.coord, "essential coordinate, 1-based");
    add_output_options(uni_member, cfg);
    uni_member->callback([&] { exit_code = run_universe_member(cfg); });

    auto* uni_interpolate =
        universe->add_subcommand("interpolate", "a clone member matching parity on the given set");
    uni_interpolate->add_option("set", cfg.naturals, "finite subset of the naturals");
    add_output_options(uni_interpolate, cfg);
    uni_interpolate->callback([&] { exit_code = run_universe_interpolate(cfg); });

    auto* uni_no_base = universe->add_subcommand(
        "no-base", "two distinct members agreeing on the given set, so it pins nothing down");
    uni_no_base->add_option("set", cfg.naturals, "finite subset of the naturals");
    add_output_options(uni_no_base, cfg);
    uni_no_base->callback([&] { exit_code = run_universe_no_base(cfg); });

    auto* uni_rho = universe->add_subcommand(
        "rho", "preservation of the pair-equality relation by an essentially unary operation");
    uni_rho->add_option("name", cfg.first_name, "core function name")->required();
    uni_rho->add_option("--arity", cfg.arity, "operation arity");
    uni_rho->add_option("--coord", cfg.coord, "essential coordinate, 1-based");
    uni_rho->add_option("--prefix", cfg.prefix, "argument bound for the scan");
    add_output_options(uni_rho, cfg);
    uni_rho->callback([&] { exit_code = run_universe_rho(cfg); });

    auto* uni_diag = universe->add_subcommand(
        "diagonalize", "build windows and members stepping away from every enumerated function");
    uni_diag->add_option("--steps", cfg.steps, "number of enumerated functions to defeat");
    uni_diag->add_option("--parity-index", cfg.parity_index,
                         "enumeration position of parity (default: past the last step)");
    add_output_options(uni_diag, cfg);
    uni_diag->callback([&] { exit_code = run_universe_diagonalize(cfg); });

    auto* integral = app.add_subcommand(
        "integral-domain", "monic integer polynomial vanishing exactly on the given roots");
    integral->add_option("roots", cfg.roots, "integer roots (repeats collapse)");
    add_output_options(integral, cfg);
    integral->callback([&] { exit_code = run_integral_domain(cfg); });

    auto* verify_all = app.add_subcommand("verify-all", "run the acceptance criteria");
    verify_all->add_option("--criterion", cfg.criterion, "run a single criterion (1-11)");
    verify_all->add_option("--seed", cfg.acceptance_seed, "seed for the randomized criteria");
    add_cap_option(verify_all, cfg);
    verify_all->add_option("--budget", cfg.budget, "saturation budget per arity");
    verify_all->add_flag("--mutate-compose", cfg.mutate_compose,
                         "corrupt the step/step composition rule to demonstrate failure reporting");
    verify_all->add_flag("--times", cfg.times, "append per-criterion timings (not byte-stable)");
    verify_all->add_flag("--json", cfg.json, "emit the record as a single JSON object");
    verify_all->callback([&] { exit_code = run_verify_all(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    } catch (const clonelab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const clonelab::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const clonelab::IncompleteSaturation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const clonelab::ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const clonelab::StrategyExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const clonelab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
