#pragma once

#include <sn/serialize.hpp>
#include <sn/suites.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace sn {

// Exit codes shared by all subcommands:
//   0 success (for `poisson`: the bivector is Poisson; for `identities`: all
//     identities passed)
//   1 negative verdict (non-Poisson bivector, failed identities)
//   2 input error (flag, syntax, type, or dimension problems)
//   3 the two bracket formulations disagreed
//   4 unexpected internal error
namespace cli_exit {
inline constexpr int ok = 0;
inline constexpr int negative = 1;
inline constexpr int input_error = 2;
inline constexpr int disagreement = 3;
inline constexpr int internal = 4;
}  // namespace cli_exit

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        out.push_back(item.substr(begin, end - begin + 1));
    }
    return out;
}

inline std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    for (const auto& item : split_list(text)) {
        std::size_t used = 0;
        const int d = std::stoi(item, &used);
        if (used != item.size() || d < 1) throw Error("invalid dimension list entry: " + item);
        dims.push_back(d);
    }
    if (dims.empty()) throw Error("dimension list is empty");
    return dims;
}

inline BracketMethod parse_method(const std::string& name) {
    if (name == "direct") return BracketMethod::direct;
    if (name == "tulczyjew") return BracketMethod::tulczyjew;
    if (name == "both") return BracketMethod::both;
    throw Error("unknown method: " + name);
}

inline BracketConvention parse_convention(const std::string& name) {
    if (name == "koszul") return BracketConvention::koszul;
    if (name == "tulczyjew") return BracketConvention::tulczyjew;
    if (name == "lichnerowicz") return BracketConvention::lichnerowicz;
    throw Error("unknown convention: " + name);
}

inline PolyMap parse_map(const std::string& components, int src, int dst) {
    std::vector<Polynomial> comps;
    for (const auto& item : split_list(components)) comps.push_back(parse_polynomial(item, src));
    return PolyMap(src, dst, std::move(comps));
}

// SN_SEED overrides --seed when set.
inline std::uint64_t effective_seed(std::uint64_t flag_value) {
    if (const char* env = std::getenv("SN_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_value;
}

// Undocumented hook for demonstrating the refuted sign exponents from the
// identity runner; see the suite's recorded counterexamples.
inline SignRules sign_rules_from_env() {
    SignRules rules;
    if (const char* env = std::getenv("SN_SIGN_RULE")) {
        const std::string value(env);
        if (value == "alternate-jacobi") rules.jacobi = JacobiSign::shifted_right;
        else if (value == "alternate-leibniz") rules.leibniz = LeibnizSign::shifted_both;
        else if (!value.empty()) throw Error("unknown SN_SIGN_RULE: " + value);
    }
    return rules;
}

inline void print_value(const Value& v, bool json, std::ostream& out) {
    if (json)
        out << to_json(v).dump() << "\n";
    else
        out << print_canonical(v) << "\n";
}

}  // namespace detail

/// Runs the command-line interface on the given arguments (without the
/// program name); output is written to `out`, diagnostics to `err`. Returns
/// the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Schouten-Nijenhuis bracket calculator on polynomial charts"};
    app.require_subcommand(1);

    struct {
        int dim = 1;
        std::string method = "both";
        std::string convention = "koszul";
        bool json = false;
        std::vector<std::string> exprs;
    } bracket_opts;
    auto* cmd_bracket = app.add_subcommand("bracket", "Schouten-Nijenhuis bracket [U, V]");
    cmd_bracket->add_option("--dim", bracket_opts.dim, "chart dimension")->required();
    cmd_bracket->add_option("--method", bracket_opts.method,
                            "formulation: direct | tulczyjew | both");
    cmd_bracket->add_option("--convention", bracket_opts.convention,
                            "sign convention: koszul | tulczyjew | lichnerowicz");
    cmd_bracket->add_flag("--json", bracket_opts.json, "emit JSON");
    cmd_bracket->add_option("exprs", bracket_opts.exprs, "two multivector expressions")
        ->expected(2);

    struct {
        int dim = 1;
        bool json = false;
        int trials = 3;
        std::uint64_t seed = 0;
        std::string expr;
        std::vector<std::string> with;
    } poisson_opts;
    auto* cmd_poisson = app.add_subcommand("poisson", "Poisson criterion for a bivector");
    cmd_poisson->add_option("--dim", poisson_opts.dim, "chart dimension")->required();
    cmd_poisson->add_flag("--json", poisson_opts.json, "emit JSON");
    cmd_poisson->add_option("--trials", poisson_opts.trials, "random Jacobiator samples");
    cmd_poisson->add_option("--seed", poisson_opts.seed, "random seed (SN_SEED overrides)");
    cmd_poisson->add_option("--with", poisson_opts.with, "extra triple f g h to sample")
        ->expected(3);
    cmd_poisson->add_option("expr", poisson_opts.expr, "bivector expression")->required();

    struct {
        std::string dims = "1,2,3,4";
        std::string suites;
        int trials = 100;
        std::uint64_t seed = 0;
        int coeff_degree = 3;
        int form_degree = 0;
        int max_degree = 0;
    } id_opts;
    auto* cmd_identities =
        app.add_subcommand("identities", "run the seeded identity suites");
    cmd_identities->add_option("--dims", id_opts.dims, "comma-separated chart dimensions");
    cmd_identities->add_option("--suites", id_opts.suites,
                               "comma-separated subset of: exterior, cartan, schouten, poisson, "
                               "naturality, flow, conventions");
    cmd_identities->add_option("--trials", id_opts.trials, "trials per identity and dimension");
    cmd_identities->add_option("--seed", id_opts.seed, "random seed (SN_SEED overrides)");
    cmd_identities->add_option("--coeff-degree", id_opts.coeff_degree,
                               "max total degree of random coefficients");
    cmd_identities->add_option("--form-degree", id_opts.form_degree,
                               "max form degree of the spanning family (0: dimension)");
    cmd_identities->add_option("--max-degree", id_opts.max_degree,
                               "max multivector degree (0: dimension)");

    struct SimpleOpts {
        int dim = 1;
        bool json = false;
        std::vector<std::string> exprs;
    };
    SimpleOpts wedge_opts, d_opts, insert_opts, iota_opts, pair_opts, lie_opts;
    auto add_simple = [&](const char* name, const char* help, SimpleOpts& opts, int arity) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--dim", opts.dim, "chart dimension")->required();
        cmd->add_flag("--json", opts.json, "emit JSON");
        cmd->add_option("exprs", opts.exprs, "expressions")->expected(arity);
        return cmd;
    };
    auto* cmd_wedge = add_simple("wedge", "wedge product", wedge_opts, 2);
    auto* cmd_d = add_simple("d", "exterior derivative", d_opts, 1);
    auto* cmd_insert = add_simple("insert", "insertion i(U)w of a multivector into a form",
                                  insert_opts, 2);
    auto* cmd_iota = add_simple("iota", "insertion of a form into a multivector", iota_opts, 2);
    auto* cmd_pair = add_simple("pair", "duality pairing <w, U>", pair_opts, 2);
    auto* cmd_lie = add_simple("lie", "Lie differential L(U)w", lie_opts, 2);

    struct {
        int src = 0, dst = 0, dim = 0;
        bool json = false;
        std::string map;
        std::vector<std::string> exprs;
    } map_opts, rel_opts;
    auto* cmd_pullback = app.add_subcommand("pullback", "pullback of a form along a polynomial map");
    cmd_pullback->add_option("--src", map_opts.src, "source chart dimension");
    cmd_pullback->add_option("--dst", map_opts.dst, "target chart dimension");
    cmd_pullback->add_option("--dim", map_opts.dim, "shorthand for --src N --dst N");
    cmd_pullback->add_flag("--json", map_opts.json, "emit JSON");
    cmd_pullback->add_option("--map", map_opts.map, "comma-separated target components")
        ->required();
    cmd_pullback->add_option("exprs", map_opts.exprs, "form on the target chart")->expected(1);

    auto* cmd_related = app.add_subcommand("related", "check whether two fields correspond under a map");
    cmd_related->add_option("--src", rel_opts.src, "source chart dimension");
    cmd_related->add_option("--dst", rel_opts.dst, "target chart dimension");
    cmd_related->add_option("--dim", rel_opts.dim, "shorthand for --src N --dst N");
    cmd_related->add_option("--map", rel_opts.map, "comma-separated target components")->required();
    cmd_related->add_option("exprs", rel_opts.exprs, "field on the source, field on the target")
        ->expected(2);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return cli_exit::ok;
        }
        app.exit(e, out, err);
        return cli_exit::input_error;
    }

    try {
        if (cmd_bracket->parsed()) {
            const Multivector u = parse_multivector(bracket_opts.exprs[0], bracket_opts.dim);
            const Multivector v = parse_multivector(bracket_opts.exprs[1], bracket_opts.dim);
            const Multivector r = bracket(u, v, detail::parse_method(bracket_opts.method),
                                          detail::parse_convention(bracket_opts.convention));
            detail::print_value(Value(r), bracket_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_poisson->parsed()) {
            const Multivector p = parse_multivector(poisson_opts.expr, poisson_opts.dim);
            if (p.degree() != 2 && !p.is_zero()) throw Error("the expression is not a bivector");
            const PoissonCandidate candidate(
                p.is_zero() ? Multivector::zero(poisson_opts.dim, 2) : p);
            TestScope scope = TestScope::for_dim(poisson_opts.dim);
            scope.trials = poisson_opts.trials;
            scope.seed = detail::effective_seed(poisson_opts.seed);
            PoissonReport report = is_poisson(candidate, scope);
            if (!poisson_opts.with.empty()) {
                Polynomial f = parse_polynomial(poisson_opts.with[0], poisson_opts.dim);
                Polynomial g = parse_polynomial(poisson_opts.with[1], poisson_opts.dim);
                Polynomial h = parse_polynomial(poisson_opts.with[2], poisson_opts.dim);
                Polynomial value = jacobiator(candidate, f, g, h);
                report.jacobiator_samples.insert(
                    report.jacobiator_samples.begin(),
                    {std::move(f), std::move(g), std::move(h), std::move(value)});
            }
            if (poisson_opts.json) {
                out << to_json(report).dump() << "\n";
            } else {
                out << "P: " << candidate.bivector.to_string() << "\n";
                out << "schouten_square: " << report.schouten_square.to_string() << "\n";
                out << "poisson: " << (report.poisson ? "true" : "false") << "\n";
                for (const auto& s : report.jacobiator_samples)
                    out << "jacobiator(" << s.f.to_string() << ", " << s.g.to_string() << ", "
                        << s.h.to_string() << "): " << s.value.to_string() << "\n";
            }
            return report.poisson ? cli_exit::ok : cli_exit::negative;
        }
        if (cmd_identities->parsed()) {
            SuiteConfig cfg;
            cfg.dims = detail::parse_dims(id_opts.dims);
            if (!id_opts.suites.empty()) cfg.suites = detail::split_list(id_opts.suites);
            if (cfg.suites.empty()) throw Error("suite list is empty");
            cfg.trials = id_opts.trials;
            cfg.seed = detail::effective_seed(id_opts.seed);
            cfg.coeff_degree = id_opts.coeff_degree;
            cfg.form_degree = id_opts.form_degree;
            cfg.max_multivector_degree = id_opts.max_degree;
            const SuiteReport report = run_identity_suites(cfg, detail::sign_rules_from_env());
            out << report.to_text();
            return report.all_passed() ? cli_exit::ok : cli_exit::negative;
        }
        if (cmd_wedge->parsed()) {
            const Value a = parse(wedge_opts.exprs[0], wedge_opts.dim);
            const Value b = parse(wedge_opts.exprs[1], wedge_opts.dim);
            Value r = [&]() -> Value {
                if (a.is_form() || b.is_form()) return Value(wedge(a.as_form(), b.as_form()));
                if (a.is_multivector() || b.is_multivector())
                    return Value(wedge(a.as_multivector(), b.as_multivector()));
                return Value(a.scalar() * b.scalar());
            }();
            detail::print_value(r, wedge_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_d->parsed()) {
            const Form w = parse_form(d_opts.exprs[0], d_opts.dim);
            detail::print_value(Value(ext_deriv(w)), d_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_insert->parsed()) {
            const Multivector u = parse_multivector(insert_opts.exprs[0], insert_opts.dim);
            const Form w = parse_form(insert_opts.exprs[1], insert_opts.dim);
            detail::print_value(Value(insert_mv(u, w)), insert_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_iota->parsed()) {
            const Form w = parse_form(iota_opts.exprs[0], iota_opts.dim);
            const Multivector u = parse_multivector(iota_opts.exprs[1], iota_opts.dim);
            detail::print_value(Value(insert_form(w, u)), iota_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_pair->parsed()) {
            const Form w = parse_form(pair_opts.exprs[0], pair_opts.dim);
            const Multivector u = parse_multivector(pair_opts.exprs[1], pair_opts.dim);
            detail::print_value(Value(pair(w, u)), pair_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_lie->parsed()) {
            const Multivector u = parse_multivector(lie_opts.exprs[0], lie_opts.dim);
            const Form w = parse_form(lie_opts.exprs[1], lie_opts.dim);
            detail::print_value(Value(lie_diff(u, w)), lie_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_pullback->parsed()) {
            const int src = map_opts.src > 0 ? map_opts.src : map_opts.dim;
            const int dst = map_opts.dst > 0 ? map_opts.dst : map_opts.dim;
            if (src < 1 || dst < 1) throw Error("pullback needs --src/--dst (or --dim)");
            const PolyMap phi = detail::parse_map(map_opts.map, src, dst);
            const Form w = parse_form(map_opts.exprs[0], dst);
            detail::print_value(Value(pullback(phi, w)), map_opts.json, out);
            return cli_exit::ok;
        }
        if (cmd_related->parsed()) {
            const int src = rel_opts.src > 0 ? rel_opts.src : rel_opts.dim;
            const int dst = rel_opts.dst > 0 ? rel_opts.dst : rel_opts.dim;
            if (src < 1 || dst < 1) throw Error("related needs --src/--dst (or --dim)");
            const PolyMap phi = detail::parse_map(rel_opts.map, src, dst);
            const Multivector u = parse_multivector(rel_opts.exprs[0], src);
            Multivector uprime = parse_multivector(rel_opts.exprs[1], dst);
            if (u.degree() != uprime.degree() && uprime.is_zero())
                uprime = Multivector::zero(dst, u.degree());
            out << (related(phi, u, uprime) ? "true" : "false") << "\n";
            return cli_exit::ok;
        }
        err << "error: no subcommand selected\n";
        return cli_exit::input_error;
    } catch (const MethodDisagreement& e) {
        err << "error: " << e.what() << "\n";
        return cli_exit::disagreement;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return cli_exit::input_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return cli_exit::internal;
    }
}

}  // namespace sn
