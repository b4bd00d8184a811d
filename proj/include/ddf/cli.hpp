#ifndef DDF_CLI_HPP
#define DDF_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ddf/cyclotomy.hpp"
#include "ddf/designs.hpp"
#include "ddf/families.hpp"
#include "ddf/field.hpp"
#include "ddf/galois_ring.hpp"
#include "ddf/isogate.hpp"
#include "ddf/serialize.hpp"
#include "ddf/version.hpp"

namespace ddf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad or contradictory arguments.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file problems and failed checks.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& construction_names() {
    static const std::vector<std::string> names{"wilson",         "wilson-half", "gr-teichmuller",
                                                "gr-squares",     "feng-1",      "feng-2",
                                                "feng-3"};
    return names;
}

/// Families by CLI name. Field constructions live in F_{p^{2r}}, ring
/// constructions in GR(p^2, r); feng-* ignore (p, r).
inline DifferenceFamily make_construction(const std::string& name, std::optional<u64> p, std::optional<unsigned> r) {
    if (name.rfind("feng-", 0) == 0) {
        const int idx = name == "feng-1" ? 0 : name == "feng-2" ? 1 : name == "feng-3" ? 2 : -1;
        if (idx < 0) throw UsageError("unknown construction '" + name + "'");
        return feng_families(build_field(11, 3))[static_cast<std::size_t>(idx)];
    }
    if (std::find(construction_names().begin(), construction_names().end(), name) == construction_names().end())
        throw UsageError("unknown construction '" + name + "'");
    if (!p || !r) throw UsageError("construction '" + name + "' requires --p and --r");
    const u64 m = checked_pow(*p, *r);
    if (name == "wilson") return wilson_family(build_field(*p, 2 * *r), m + 1);
    if (name == "wilson-half") {
        if (*p % 2 == 0) throw UsageError("wilson-half requires odd p");
        return wilson_family(build_field(*p, 2 * *r), 2 * (m + 1));
    }
    const GaloisRing ring = build_ring(*p, *r);
    if (name == "gr-teichmuller") return davis_family(ring);
    return squares_family(ring);
}

struct Options {
    std::optional<u64> p;
    std::optional<unsigned> r;
    std::optional<unsigned> n;
    std::optional<u64> e;
    std::string construction;
    std::string in;
    std::string design_in;
    std::string out;
    std::string method = "differences";
    std::string a = "wilson-half";
    std::string b = "gr-squares";
    unsigned threads = 0;
    u64 node_budget = 1000000;
    bool closed_form = false;
    bool check = false;
};

namespace detail {

inline unsigned threads_from_env(unsigned requested) {
    if (requested != 0) return requested;
    if (const char* env = std::getenv("DDF_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw UsageError(std::string("DDF_THREADS is not a number: ") + env);
        }
    }
    return 0;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot open output file " + path);
        }
        os_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

inline DifferenceFamily load_family(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open family file " + path);
    try {
        return read_family(is);
    } catch (const std::invalid_argument& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

inline Design load_design(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open design file " + path);
    try {
        return read_design(is);
    } catch (const std::invalid_argument& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

/// Family from --in or from --p/--r/--construction, never both.
inline DifferenceFamily family_from(const Options& o) {
    if (!o.in.empty() && !o.construction.empty())
        throw UsageError("--in and --construction are mutually exclusive");
    if (!o.in.empty()) return load_family(o.in);
    if (o.construction.empty()) throw UsageError("need --in FILE or --construction NAME");
    return make_construction(o.construction, o.p, o.r);
}

inline int cmd_construct(const Options& o, std::ostream& out) {
    if (o.construction.empty()) throw UsageError("construct requires --construction");
    const DifferenceFamily fam = make_construction(o.construction, o.p, o.r);
    Output sink(o.out, out);
    write_family(sink.stream(), fam);
    return kExitOk;
}

inline int cmd_develop(const Options& o, std::ostream& out) {
    const Design design = develop(family_from(o));
    Output sink(o.out, out);
    write_design(sink.stream(), design);
    return kExitOk;
}

inline int cmd_profile(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.method != "direct" && o.method != "differences" && o.method != "both")
        throw UsageError("--method must be direct, differences or both");
    IntersectionProfile result;
    if (!o.design_in.empty()) {
        if (!o.in.empty() || !o.construction.empty())
            throw UsageError("--design cannot be combined with --in or --construction");
        if (o.method != "direct") throw UsageError("a design file supports only --method direct");
        result = profile_direct(load_design(o.design_in));
    } else {
        const DifferenceFamily fam = family_from(o);
        const unsigned threads = threads_from_env(o.threads);
        if (o.method == "differences") {
            result = profile_via_differences(fam, threads);
        } else if (o.method == "direct") {
            result = profile_direct(develop(fam));
        } else {
            const IntersectionProfile diff = profile_via_differences(fam, threads);
            const IntersectionProfile direct = profile_direct(develop(fam));
            if (diff != direct) {
                std::ostringstream msg;
                msg << "profile disagreement: differences " << diff << " vs direct " << direct;
                throw InputError(msg.str());
            }
            err << "profile: both methods agree\n";
            result = diff;
        }
    }
    Output sink(o.out, out);
    sink.stream() << profile_to_json(result).dump() << '\n';
    return kExitOk;
}

/// Compares known cells of a brute-force table against the closed form.
inline std::optional<std::pair<u64, u64>> closed_form_mismatch(const CyclotomicTable& brute,
                                                               const CyclotomicTable& closed) {
    for (u64 i = 0; i < brute.order(); ++i)
        for (u64 j = 0; j < brute.order(); ++j)
            if (closed.at(i, j) && closed.at(i, j) != brute.at(i, j)) return std::make_pair(i, j);
    return std::nullopt;
}

inline int cmd_cyclo(const Options& o, std::ostream& out, std::ostream& err) {
    if (!o.p) throw UsageError("cyclo requires --p");
    if (o.n && o.r) throw UsageError("--n and --r are mutually exclusive");
    if (!o.n && !o.r) throw UsageError("cyclo requires --n (field degree) or --r (field F_{p^{2r}})");
    const unsigned degree = o.n ? *o.n : 2 * *o.r;
    std::optional<u64> m;
    if (o.r) m = checked_pow(*o.p, *o.r);
    if (!o.e && !m) throw UsageError("cyclo with --n requires --e");
    const u64 e = o.e ? *o.e : *m + 1;

    std::optional<CyclotomicTable> closed;
    if (o.closed_form || o.check) {
        if (!m) throw UsageError("closed forms require --r");
        if (e == *m + 1) closed = closed_form_order_e(*o.p, *o.r);
        else if (e == 2 * (*m + 1)) closed = closed_form_order_2e(*o.p, *o.r);
        else throw UsageError("closed forms exist only for e = p^r + 1 and e = 2(p^r + 1)");
    }
    Output sink(o.out, out);
    if (o.closed_form && !o.check) {
        write_table_csv(sink.stream(), *closed);
        return kExitOk;
    }
    const FiniteField field = build_field(*o.p, degree);
    const CyclotomicTable table = cyclotomic_table(field, e);
    write_table_csv(sink.stream(), table);
    if (o.check) {
        if (auto bad = closed_form_mismatch(table, *closed)) {
            err << "cyclo: closed form disagrees at (" << bad->first << ", " << bad->second << ")\n";
            return kExitFailure;
        }
        err << "cyclo: closed form agrees on all known cells\n";
        if ((field.order() - 1) % (2 * e) == 0) {
            const auto rel = check_sum_relation(table, cyclotomic_table(field, 2 * e));
            if (!rel.pass) {
                err << "cyclo: sum relation fails at (" << rel.witness->first << ", " << rel.witness->second << ")\n";
                return kExitFailure;
            }
            err << "cyclo: sum relation with order " << 2 * e << " holds\n";
        }
    }
    return kExitOk;
}

inline int cmd_gate(const Options& o, std::ostream& out) {
    if (!o.p || !o.r) throw UsageError("gate requires --p and --r");
    Output sink(o.out, out);
    sink.stream() << gate_to_json(gate(*o.p, *o.r)).dump() << '\n';
    return kExitOk;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
    const DifferenceFamily a = make_construction(o.a, o.p, o.r);
    const DifferenceFamily b = make_construction(o.b, o.p, o.r);
    const Comparison cmp = compare_designs(a, b, threads_from_env(o.threads));
    CertificateInput in{o.a, o.b, std::nullopt};
    if (o.p && o.r) in.gate = gate(*o.p, *o.r);
    Output sink(o.out, out);
    sink.stream() << certificate_json(a, cmp, in).dump() << '\n';
    return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    const DifferenceFamily fam = family_from(o);
    const ValidationReport report = validate_ddf(fam);
    const bool lambda_ok = report.observed_lambda && *report.observed_lambda == fam.lambda;
    ordered_json j;
    j["family"] = validation_to_json(report);
    j["declared"] = {{"v", fam.v}, {"k", fam.k}, {"lambda", fam.lambda}, {"b", fam.b()}};
    bool design_ok = true;
    if (fam.v <= kMaxPairCountPoints) {
        const DesignCheck check = verify_2design(develop(fam), fam.lambda);
        design_ok = check.pass;
        j["design"] = {{"pass", check.pass},
                       {"witness", check.witness ? ordered_json({check.witness->first, check.witness->second})
                                                 : ordered_json(nullptr)},
                       {"witness_count", check.witness_count}};
    } else {
        j["design"] = {{"pass", nullptr}, {"skipped", "too many points for exhaustive pair counting"}};
    }
    const bool ok = report.is_difference_family && lambda_ok && design_ok;
    j["pass"] = ok;
    Output sink(o.out, out);
    sink.stream() << j.dump() << '\n';
    return ok ? kExitOk : kExitFailure;
}

}  // namespace detail

/// Runs one subcommand. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Disjoint difference families, their designs and block intersection profiles"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1, 1);
    Options o;

    auto add_pr = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "prime p");
        sub->add_option("--r", o.r, "extension degree r (fields F_{p^{2r}}, rings GR(p^2, r))");
    };
    auto add_family_source = [&](CLI::App* sub) {
        add_pr(sub);
        sub->add_option("--construction", o.construction, "construction name")
            ->check(CLI::IsMember(construction_names()));
        sub->add_option("--in", o.in, "family file");
    };

    auto* construct = app.add_subcommand("construct", "build a difference family and write a family file");
    add_pr(construct);
    construct->add_option("--construction", o.construction, "construction name")
        ->check(CLI::IsMember(construction_names()))
        ->required();
    construct->add_option("--out", o.out, "output path (default stdout)");

    auto* dev = app.add_subcommand("develop", "develop a family into a design file");
    add_family_source(dev);
    dev->add_option("--out", o.out, "output path (default stdout)");

    auto* prof = app.add_subcommand("profile", "block intersection profile as JSON");
    add_family_source(prof);
    prof->add_option("--design", o.design_in, "design file (direct method only)");
    prof->add_option("--method", o.method, "direct | differences | both")
        ->check(CLI::IsMember({"direct", "differences", "both"}));
    prof->add_option("--threads", o.threads, "worker threads (0 = DDF_THREADS or all cores)");
    prof->add_option("--out", o.out, "output path (default stdout)");

    auto* cyclo = app.add_subcommand("cyclo", "cyclotomic number table as CSV");
    add_pr(cyclo);
    cyclo->add_option("--n", o.n, "field degree: table over F_{p^n}");
    cyclo->add_option("--e", o.e, "order e (default p^r + 1)");
    cyclo->add_flag("--closed-form", o.closed_form, "emit the closed-form table ('?' = unknown)");
    cyclo->add_flag("--check", o.check, "check brute force against the closed form and the sum relation");
    cyclo->add_option("--out", o.out, "output path (default stdout)");

    auto* gate_cmd = app.add_subcommand("gate", "applicability report for the non-isomorphism criterion");
    add_pr(gate_cmd);
    gate_cmd->add_option("--out", o.out, "output path (default stdout)");

    auto* compare = app.add_subcommand("compare", "compare two constructions and emit a certificate");
    add_pr(compare);
    compare->add_option("--a", o.a, "first construction")->check(CLI::IsMember(construction_names()));
    compare->add_option("--b", o.b, "second construction")->check(CLI::IsMember(construction_names()));
    compare->add_option("--threads", o.threads, "worker threads (0 = DDF_THREADS or all cores)");
    compare->add_option("--out", o.out, "output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "validate a family and its development");
    add_family_source(verify);
    verify->add_option("--out", o.out, "output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }

    try {
        if (construct->parsed()) return detail::cmd_construct(o, out);
        if (dev->parsed()) return detail::cmd_develop(o, out);
        if (prof->parsed()) return detail::cmd_profile(o, out, err);
        if (cyclo->parsed()) return detail::cmd_cyclo(o, out, err);
        if (gate_cmd->parsed()) return detail::cmd_gate(o, out);
        if (compare->parsed()) return detail::cmd_compare(o, out);
        if (verify->parsed()) return detail::cmd_verify(o, out);
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExceeded& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitFailure;
    } catch (const InputError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitFailure;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace ddf::cli

#endif  // DDF_CLI_HPP
