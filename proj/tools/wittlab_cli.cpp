// Command-line front end: ring info, ad-hoc Witt / delta computations,
// universal polynomial emission, and the verification harness.
//
// Exit codes: 0 success, 1 verification suite failure, 2 usage/parse errors.

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wittlab/wittlab.hpp"

namespace {

using nlohmann::ordered_json;
using namespace wittlab;

constexpr int kSchemaVersion = 1;

// Built-in ring when --config is absent: F_2[t][u] with phi(u) = u^2.
RingConfig builtin_config() {
    CoeffRing ring = CoeffRing::equal_char(2, 1);
    AlgPtr alg = PolyAlg::make(ring, std::size_t{1});
    FrobLift phi(alg, {Poly::generator(alg, 0).pow(2)});
    return RingConfig{std::move(ring), alg, std::move(phi)};
}

std::string ring_label(const CoeffRing& ring) {
    std::string label = to_string(ring.kind());
    if (ring.kind() != RingKind::MixedCharRamified)
        label += "-p" + std::to_string(ring.p()) + "-h" + std::to_string(ring.h());
    return label;
}

ordered_json witt_json(const char* kind, const std::vector<std::string>& comps) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = kind;
    j["n"] = comps.size() - 1;
    j["components"] = comps;
    return j;
}

std::vector<std::string> comp_strings(const WittVec& x) {
    std::vector<std::string> out;
    for (const auto& c : x.comps) out.push_back(format_poly(c));
    return out;
}

std::vector<std::string> comp_strings(const GhostVec& w) {
    std::vector<std::string> out;
    for (const auto& c : w.comps) out.push_back(format_poly(c));
    return out;
}

std::vector<std::string> comp_strings(const ResidueWittVec& x) {
    std::vector<std::string> out;
    for (const auto& c : x.comps) out.push_back(format_residue(c));
    return out;
}

void emit(bool as_json, const ordered_json& j, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

ordered_json report_json(const VerifyReport& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["ring"] = r.ring;
    j["status"] = r.status();
    if (r.skipped) {
        j["skip_reason"] = r.skip_reason;
    } else {
        j["seed"] = r.seed;
        j["trials"] = r.trials;
        j["passes"] = r.passes;
        ordered_json fs = ordered_json::array();
        for (const auto& f : r.failures) {
            ordered_json fj;
            fj["inputs"] = f.inputs;
            fj["expected"] = f.expected;
            fj["actual"] = f.actual;
            fs.push_back(fj);
        }
        j["failures"] = fs;
        j["wall_ms"] = r.wall_ms;
    }
    return j;
}

int emit_reports(const std::vector<VerifyReport>& reports, bool as_json) {
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass();
    if (as_json) {
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "verify";
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        j["reports"] = arr;
        j["verdict"] = all_pass ? "PASS" : "FAIL";
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            std::string line = r.status();
            line.resize(8, ' ');
            line += r.suite + " @ " + r.ring;
            if (!r.skipped)
                line += "  (trials=" + std::to_string(r.trials) + ", " +
                        std::to_string(r.wall_ms) + " ms)";
            else
                line += "  [" + r.skip_reason + "]";
            std::cout << line << "\n";
            for (const auto& f : r.failures) {
                std::cout << "  witness:  " << f.inputs << "\n";
                std::cout << "  expected: " << f.expected << "\n";
                std::cout << "  actual:   " << f.actual << "\n";
            }
        }
        std::cout << (all_pass ? "verdict: PASS" : "verdict: FAIL") << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pi-typical Witt vectors, pi-derivations, and theorem verification"};
    app.require_subcommand(1);

    std::string config_path;
    bool as_json = false;
    app.add_option("--config", config_path, "ring configuration file");
    app.add_flag("--json", as_json, "emit JSON instead of plain text");

    // Deferred so that `--help` works without a valid config.
    auto context = [&]() {
        RingConfig rc = config_path.empty() ? builtin_config() : load_ring_config(config_path);
        return rc;
    };

    int exit_code = 0;
    std::uint64_t flag_n = 2;
    std::string arg_x, arg_y;

    // ---- ring ----
    auto* ring_cmd = app.add_subcommand("ring", "coefficient ring operations");
    ring_cmd->require_subcommand(1);
    auto* ring_info = ring_cmd->add_subcommand("info", "describe the configured ring");
    ring_info->callback([&] {
        RingConfig rc = context();
        const CoeffRing& B = rc.ring;
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "ring";
        j["ring"]["kind"] = to_string(B.kind());
        j["ring"]["p"] = B.p();
        j["ring"]["h"] = B.h();
        j["ring"]["q"] = B.q();
        j["ring"]["e"] = B.e();
        j["ring"]["pi"] = format_b(B, B.pi());
        if (B.h() > 1) {
            std::string mod;
            for (std::size_t k = 0; k < B.modulus().size(); ++k) {
                if (B.modulus()[k] == 0) continue;
                if (!mod.empty()) mod += "+";
                if (k == 0) mod += std::to_string(B.modulus()[k]);
                else {
                    if (B.modulus()[k] != 1) mod += std::to_string(B.modulus()[k]) + "*";
                    mod += (k == 1 ? "z" : "z^" + std::to_string(k));
                }
            }
            j["ring"]["modulus"] = mod;
        }
        j["algebra"]["generators"] = rc.alg->names();
        ordered_json imgs;
        for (std::size_t i = 0; i < rc.alg->m(); ++i)
            imgs[rc.alg->names()[i]] = format_poly(rc.phi.images()[i]);
        j["frobenius"]["images"] = imgs;
        std::string text = "kind: " + std::string(to_string(B.kind())) +
                           "\np: " + std::to_string(B.p()) + "  h: " + std::to_string(B.h()) +
                           "  q: " + std::to_string(B.q()) + "  e: " + std::to_string(B.e()) +
                           "\npi: " + format_b(B, B.pi());
        if (j["ring"].contains("modulus"))
            text += "\nmodulus: " + j["ring"]["modulus"].get<std::string>();
        text += "\ngenerators:";
        for (const auto& g : rc.alg->names()) text += " " + g;
        for (std::size_t i = 0; i < rc.alg->m(); ++i)
            text += "\nphi(" + rc.alg->names()[i] +
                    ") = " + format_poly(rc.phi.images()[i]);
        emit(as_json, j, text);
    });

    // ---- witt ----
    auto* witt_cmd = app.add_subcommand("witt", "Witt vector operations");
    witt_cmd->require_subcommand(1);

    auto add_binary = [&](const char* name, const char* help, BOp op) {
        auto* sub = witt_cmd->add_subcommand(name, help);
        sub->add_option("x", arg_x, "first Witt vector \"(x_0, ..., x_n)\"")->required();
        sub->add_option("y", arg_y, "second Witt vector")->required();
        sub->callback([&, op] {
            RingConfig rc = context();
            WittVec x = parse_witt(arg_x, rc.alg);
            WittVec y = parse_witt(arg_y, rc.alg);
            WittVec r = witt_arith(x, y, op);
            emit(as_json, witt_json("witt", comp_strings(r)), format_witt(r));
        });
    };
    add_binary("add", "Witt vector sum", BOp::Add);
    add_binary("mul", "Witt vector product", BOp::Mul);

    auto* witt_ghost = witt_cmd->add_subcommand("ghost", "ghost components of a Witt vector");
    witt_ghost->add_option("x", arg_x, "Witt vector")->required();
    witt_ghost->callback([&] {
        RingConfig rc = context();
        GhostVec w = ghost(parse_witt(arg_x, rc.alg));
        emit(as_json, witt_json("ghost", comp_strings(w)), format_ghost(w));
    });

    auto* witt_unghost = witt_cmd->add_subcommand("unghost", "Witt vector with given ghost components");
    witt_unghost->add_option("w", arg_x, "ghost vector")->required();
    witt_unghost->callback([&] {
        RingConfig rc = context();
        WittVec x = unghost(parse_ghost(arg_x, rc.alg));
        emit(as_json, witt_json("witt", comp_strings(x)), format_witt(x));
    });

    auto* witt_frob = witt_cmd->add_subcommand("frob", "Witt vector Frobenius F");
    witt_frob->add_option("x", arg_x, "Witt vector")->required();
    witt_frob->callback([&] {
        RingConfig rc = context();
        WittVec r = frobenius_F(parse_witt(arg_x, rc.alg));
        emit(as_json, witt_json("witt", comp_strings(r)), format_witt(r));
    });

    auto* witt_teich = witt_cmd->add_subcommand("teich", "Teichmuller lift");
    witt_teich->add_option("a", arg_x, "polynomial")->required();
    witt_teich->add_option("--n", flag_n, "truncation level")->capture_default_str();
    witt_teich->callback([&] {
        RingConfig rc = context();
        WittVec r = teichmuller(parse_poly(arg_x, rc.alg), flag_n);
        emit(as_json, witt_json("witt", comp_strings(r)), format_witt(r));
    });

    std::string flag_op = "add";
    auto* witt_univ = witt_cmd->add_subcommand("universal", "universal structure polynomials");
    witt_univ->add_option("--n", flag_n, "truncation level")->capture_default_str();
    witt_univ->add_option("--op", flag_op, "add or mul")->check(CLI::IsMember({"add", "mul"}));
    witt_univ->callback([&] {
        RingConfig rc = context();
        BOp op = flag_op == "add" ? BOp::Add : BOp::Mul;
        std::vector<Poly> polys = universal_polys(rc.ring, flag_n, op);
        const char* prefix = flag_op == "add" ? "S_" : "M_";
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "universal";
        j["op"] = flag_op;
        j["n"] = flag_n;
        std::vector<std::string> strs;
        std::string text;
        for (std::size_t k = 0; k < polys.size(); ++k) {
            strs.push_back(format_poly(polys[k]));
            if (k) text += "\n";
            text += prefix + std::to_string(k) + " = " + strs.back();
        }
        j["polys"] = strs;
        emit(as_json, j, text);
    });

    // ---- delta ----
    auto* delta_cmd = app.add_subcommand("delta", "pi-derivation operations");
    delta_cmd->require_subcommand(1);

    auto* delta_app = delta_cmd->add_subcommand("apply", "apply delta once");
    delta_app->add_option("f", arg_x, "polynomial")->required();
    delta_app->callback([&] {
        RingConfig rc = context();
        DeltaContext ctx(rc.alg, rc.phi);
        Poly r = ctx.delta(parse_poly(arg_x, rc.alg));
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "poly";
        j["value"] = format_poly(r);
        emit(as_json, j, format_poly(r));
    });

    auto* delta_exp = delta_cmd->add_subcommand("exp", "arithmetic exponential exp_delta");
    delta_exp->add_option("f", arg_x, "polynomial")->required();
    delta_exp->add_option("--n", flag_n, "truncation level")->capture_default_str();
    delta_exp->callback([&] {
        RingConfig rc = context();
        DeltaContext ctx(rc.alg, rc.phi);
        WittVec r = exp_delta(ctx, parse_poly(arg_x, rc.alg), flag_n);
        emit(as_json, witt_json("witt", comp_strings(r)), format_witt(r));
    });

    auto* delta_taylor = delta_cmd->add_subcommand("taylor", "arithmetic Taylor expansion");
    delta_taylor->add_option("f", arg_x, "polynomial")->required();
    delta_taylor->add_option("--n", flag_n, "truncation level")->capture_default_str();
    delta_taylor->callback([&] {
        RingConfig rc = context();
        DeltaContext ctx(rc.alg, rc.phi);
        ResidueWittVec r = taylor_expand(ctx, parse_poly(arg_x, rc.alg), flag_n);
        emit(as_json, witt_json("residue_witt", comp_strings(r)), format_residue_witt(r));
    });

    auto* delta_terms = delta_cmd->add_subcommand("terms", "L_ij / S_i decomposition of P_n");
    delta_terms->add_option("f", arg_x, "polynomial")->required();
    delta_terms->add_option("--n", flag_n, "component index (>= 1)")->capture_default_str();
    delta_terms->callback([&] {
        RingConfig rc = context();
        DeltaContext ctx(rc.alg, rc.phi);
        TermTable table = term_decomposition(ctx, parse_poly(arg_x, rc.alg), flag_n);
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "term_table";
        j["n"] = table.n;
        ordered_json entries = ordered_json::array();
        std::string text;
        for (const auto& e : table.entries) {
            ordered_json ej;
            ej["i"] = e.i;
            ej["j"] = e.j;
            ej["valuation"] = e.v.str();
            ej["poly"] = format_poly(e.L);
            entries.push_back(ej);
            text += "L(" + std::to_string(e.i) + "," + std::to_string(e.j) + ")  v=" +
                    e.v.str() + "  " + format_poly(e.L) + "\n";
        }
        j["entries"] = entries;
        ordered_json sums = ordered_json::array();
        for (const auto& s : table.sums) {
            ordered_json sj;
            sj["i"] = s.i;
            sj["valuation"] = s.v.str();
            sj["poly"] = format_poly(s.S);
            sums.push_back(sj);
            text += "S_" + std::to_string(s.i) + "  v=" + s.v.str() + "  " +
                    format_poly(s.S) + "\n";
        }
        j["sums"] = sums;
        j["total"] = format_poly(table.total);
        text += "P_" + std::to_string(table.n) + " = " + format_poly(table.total);
        emit(as_json, j, text);
    });

    std::uint64_t flag_gen_degree = 2, flag_t_degree = 2;
    auto* delta_consts = delta_cmd->add_subcommand("constants", "enumerate delta-constants");
    delta_consts->add_option("--gen-degree", flag_gen_degree, "generator degree bound")
        ->capture_default_str();
    delta_consts->add_option("--t-degree", flag_t_degree, "t-degree bound")
        ->capture_default_str();
    delta_consts->callback([&] {
        RingConfig rc = context();
        DeltaContext ctx(rc.alg, rc.phi);
        std::vector<Poly> found = enumerate_constants(
            ctx, DegreeBounds{static_cast<std::uint32_t>(flag_gen_degree),
                              static_cast<std::uint32_t>(flag_t_degree)});
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["kind"] = "constants";
        j["count"] = found.size();
        std::vector<std::string> strs;
        std::string text;
        for (const auto& f : found) {
            strs.push_back(format_poly(f));
            if (!text.empty()) text += "\n";
            text += strs.back();
        }
        j["values"] = strs;
        emit(as_json, j, text);
    });

    // ---- verify ----
    std::string flag_suite;
    std::uint64_t flag_seed = 1, flag_trials = 0;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    verify_cmd->add_option("suite", flag_suite, "suite name or 'all'")->required();
    verify_cmd->add_option("--seed", flag_seed, "base PRNG seed")->capture_default_str();
    verify_cmd->add_option("--trials", flag_trials, "trials per suite (0 = default)")
        ->capture_default_str();
    verify_cmd->callback([&] {
        std::vector<RingSpec> rings;
        if (config_path.empty()) {
            rings = default_rings();
        } else {
            RingConfig rc = load_ring_config(config_path);
            rings.push_back(make_ring_spec(ring_label(rc.ring), rc));
        }
        std::string filter = flag_suite == "all" ? "" : flag_suite;
        exit_code = emit_reports(run_matching(rings, filter, flag_seed, flag_trials), as_json);
    });

    // let global --config / --json appear after any subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const wittlab::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const wittlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
