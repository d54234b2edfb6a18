// Acceptance gate: ten criteria, one PASS/FAIL line each.
//
// Each criterion either drives a verification suite at a pinned sample count
// or checks fixed values directly; several also enforce wall-clock budgets.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "wittlab/wittlab.hpp"

#ifndef WITTLAB_CLI_PATH
#error "WITTLAB_CLI_PATH must point at the built binary"
#endif

using namespace wittlab;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int idx, std::string name)
        : idx_(idx), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& detail) {
        if (!ok && note_.empty()) note_ = detail;
        ok_ = ok_ && ok;
    }

    void expect_suite(const VerifyReport& r) {
        bool ok = r.status() == "PASS";
        std::string note = r.suite + " @ " + r.ring + ": " + r.status();
        if (!ok && !r.failures.empty())
            note += " [" + r.failures.front().inputs + " expected " +
                    r.failures.front().expected + " got " + r.failures.front().actual + "]";
        expect(ok, note);
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

    void budget(double limit_s) {
        double s = seconds();
        if (s >= limit_s)
            expect(false, "runtime " + std::to_string(s) + " s exceeds " +
                              std::to_string(limit_s) + " s");
    }

    ~Criterion() {
        std::printf("%s  criterion %2d: %s (%.2f s)%s\n", ok_ ? "PASS" : "FAIL", idx_,
                    name_.c_str(), seconds(), note_.empty() ? "" : (" -- " + note_).c_str());
        std::fflush(stdout);
        if (!ok_) ++g_failures;
    }

private:
    int idx_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
    std::string note_;
};

RingSpec named_spec(const std::string& name) {
    for (auto& s : default_rings())
        if (s.name == name) return s;
    throw DomainError("no default ring named " + name);
}

VerifyReport run(const RingSpec& spec, const std::string& suite, std::uint64_t trials,
                 std::uint64_t seed = 1) {
    return run_suite(SuiteConfig{suite, spec, seed, trials});
}

std::vector<std::string> sorted_formats(const std::vector<Poly>& polys) {
    std::vector<std::string> out;
    for (const auto& f : polys) out.push_back(format_poly(f));
    std::sort(out.begin(), out.end());
    return out;
}

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    CliRun res;
    std::string cmd = std::string(WITTLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[1 << 14];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
    res.exit_code = WEXITSTATUS(pclose(pipe));
    return res;
}

std::string strip_timing(const std::string& text) {
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (line.find("wall_ms") == std::string::npos) out += line + "\n";
        start = end + 1;
    }
    return out;
}

// --------------------------------------------------------------------------

void criterion_1() {
    Criterion c(1, "ghost homomorphism + round trip, 500 pairs per ring, n <= 4");
    RingSpec eq = named_spec("eqchar2");
    RingSpec m2 = named_spec("mixed2");
    RingSpec m3 = named_spec("mixed3");
    m3.n_max = 4;  // criterion fixes n <= 4 for p = 3 as well
    for (const auto& spec : {eq, m2, m3}) c.expect_suite(run(spec, "ghost_hom", 500));
    c.budget(10.0);
}

void criterion_2() {
    Criterion c(2, "explicit recursion oracle, 200 samples per characteristic, n <= 4");
    c.expect_suite(run(named_spec("eqchar2"), "explicit_recursion", 200));
    c.expect_suite(run(named_spec("mixed2"), "explicit_recursion", 200));

    // Fixed vector: exp_delta(t) = (t, 1+t, t+t^2) over F_2[t].
    RingSpec eq = named_spec("eqchar2");
    DeltaContext ctx(eq.alg, eq.phi);
    WittVec e = exp_delta(ctx, Poly::constant(eq.alg, eq.ring.t_power(1)), 2);
    c.expect(format_witt(e) == "(t, 1+t, t+t^2)",
             "exp_delta(t) = " + format_witt(e) + ", want (t, 1+t, t+t^2)");
    c.budget(30.0);
}

void criterion_3() {
    Criterion c(3, "theorem val: v(P_n(x)) = m-n, 200 samples per m in 1..5");
    for (const char* name : {"eqchar2", "mixed2"}) {
        RingSpec spec = named_spec(name);
        spec.n_max = 5;  // m ranges over 1..5; every n <= m is checked per trial
        c.expect_suite(run(spec, "thm_val", 1000));
    }
    // Fixed witness: P_2(t^2) = 1 + t + t^5 + t^6, valuation 0.
    RingSpec eq = named_spec("eqchar2");
    DeltaContext ctx(eq.alg, eq.phi);
    Poly p2 = p_n_explicit(ctx, Poly::constant(eq.alg, eq.ring.t_power(2)), 2);
    Poly want = parse_poly("1 + t + t^5 + t^6", eq.alg);
    c.expect(p2 == want, "P_2(t^2) = " + format_poly(p2));
    c.expect(v_pi(p2) == Valuation::of(0), "v(P_2(t^2)) = " + v_pi(p2).str());
}

void criterion_4() {
    Criterion c(4, "mod-injectivity: vanishing iff v(x) >= n+1, 200 per direction");
    // Even trial indices test the vanishing direction, odd ones injectivity,
    // so 400 trials split 200/200.
    c.expect_suite(run(named_spec("eqchar2"), "modinj", 400));
    c.expect_suite(run(named_spec("mixed2"), "modinj", 400));
}

void criterion_5() {
    Criterion c(5, "lemma l1/l2 valuation formulas, 100 hypothesis samples, e=1 and e=2");
    c.expect_suite(run(named_spec("mixed2"), "lij_valuations", 100));
    c.expect_suite(run(named_spec("ramified"), "lij_valuations", 100));
}

void criterion_6() {
    Criterion c(6, "prop modpiP: phi(u) = u^2 + t^(m+1), v(P_n(u)) = m-n+1");
    auto alg = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    const CoeffRing& B = alg->base();
    Poly u = Poly::generator(alg, 0);
    for (std::uint32_t m = 1; m <= 3; ++m) {
        DeltaContext ctx(alg, FrobLift(alg, {u.pow(2) + Poly::constant(alg, B.t_power(m + 1))}));
        Valuation vd = v_pi(ctx.delta(u));
        c.expect(vd == Valuation::of(m), "guard v(delta u) = " + vd.str() + " for m=" +
                                             std::to_string(m));
        WittVec e = exp_delta(ctx, u, m + 1);
        for (std::uint32_t n = 1; n <= m + 1; ++n) {
            Valuation v = v_pi(e.comps[n]);
            c.expect(v == Valuation::of(static_cast<std::int64_t>(m) - n + 1),
                     "m=" + std::to_string(m) + " n=" + std::to_string(n) +
                         ": v(P_n(u)) = " + v.str());
        }
        if (m == 2) {
            Poly want2 = parse_poly("t + t^3 + t^4", alg);
            Poly want3 = parse_poly("1 + t + t^3 + t^5 + t^6 + t^7 + t^9", alg);
            c.expect(e.comps[2] == want2, "P_2(u) = " + format_poly(e.comps[2]));
            c.expect(e.comps[3] == want3, "P_3(u) = " + format_poly(e.comps[3]));
        }
    }
}

void criterion_7() {
    Criterion c(7, "delta-constants: exhaustive enumeration over three rings");
    // F_2[t] with t-degree <= 8: constants are exactly {0, 1}.
    auto b2 = PolyAlg::make(CoeffRing::equal_char(2, 1), std::size_t{0});
    auto got2 = sorted_formats(enumerate_constants(DeltaContext::standard(b2), {0, 8}));
    c.expect(got2 == std::vector<std::string>{"0", "1"},
             "F_2[t] constants: " + std::to_string(got2.size()) + " found");

    // F_2[t][u], phi(u) = u^2, u-deg <= 2, t-deg <= 2: the F_2-polynomials in u.
    auto a2 = PolyAlg::make(CoeffRing::equal_char(2, 1), 1);
    auto gotu = sorted_formats(enumerate_constants(DeltaContext::standard(a2), {2, 2}));
    std::vector<std::string> wantu = {"0",       "1",         "1 + u",     "1 + u + u^2",
                                      "1 + u^2", "u",         "u + u^2",   "u^2"};
    c.expect(gotu == wantu, "F_2[t][u] constants: " + std::to_string(gotu.size()) + " found");

    // F_4[t] with t-degree <= 4: constants are exactly F_4.
    auto b4 = PolyAlg::make(CoeffRing::equal_char(2, 2), std::size_t{0});
    auto got4 = sorted_formats(enumerate_constants(DeltaContext::standard(b4), {0, 4}));
    std::vector<std::string> want4 = {"0", "1", "1+z", "z"};
    c.expect(got4 == want4, "F_4[t] constants: " + std::to_string(got4.size()) + " found");
    c.budget(60.0);
}

void criterion_8() {
    Criterion c(8, "sadhu certificates + lemma allzero, 100 samples per branch");
    // Five deterministic branches (one constant branch, m = 0..3); 500 trials
    // give 100 of each.
    c.expect_suite(run(named_spec("eqchar2"), "sadhu_finite", 500));
    c.expect_suite(run(named_spec("eqchar2"), "allzero", 100));
}

void criterion_9() {
    Criterion c(9, "equal-char componentwise addition; Teichmuller behaviour");
    RingSpec eq = named_spec("eqchar2");
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng.below(4);
        WittVec x = sample_witt(eq.alg, rng, eq.bounds, n);
        WittVec y = sample_witt(eq.alg, rng, eq.bounds, n);
        WittVec sum = witt_arith(x, y, BOp::Add);
        bool componentwise = true;
        for (std::size_t i = 0; i <= n; ++i)
            componentwise = componentwise && sum.comps[i] == x.comps[i] + y.comps[i];
        c.expect(componentwise, "W_n(A) addition not componentwise at trial " +
                                    std::to_string(trial));
        // Same statement in W_n(A_0).
        ResidueWittVec xr = to_residue(x), yr = to_residue(y);
        ResidueWittVec rsum = residue_witt_arith(xr, yr, BOp::Add);
        bool res_componentwise = true;
        for (std::size_t i = 0; i <= n; ++i)
            res_componentwise = res_componentwise && rsum.comps[i] == xr.comps[i] + yr.comps[i];
        c.expect(res_componentwise, "W_n(A_0) addition not componentwise at trial " +
                                        std::to_string(trial));

        // Teichmuller is additive and multiplicative in equal characteristic.
        Poly a = sample_poly(eq.alg, rng, eq.bounds);
        Poly b = sample_poly(eq.alg, rng, eq.bounds);
        c.expect(witt_arith(teichmuller(a, n), teichmuller(b, n), BOp::Add) ==
                     teichmuller(a + b, n),
                 "theta not additive in equal characteristic");
        c.expect(witt_arith(teichmuller(a, n), teichmuller(b, n), BOp::Mul) ==
                     teichmuller(a * b, n),
                 "theta not multiplicative in equal characteristic");
    }

    // Mixed characteristic witness: theta(1) + theta(1) = (2, -1) != theta(2).
    RingSpec m2 = named_spec("mixed2");
    WittVec one = teichmuller(Poly::one(m2.alg), 1);
    WittVec two = witt_arith(one, one, BOp::Add);
    c.expect(two.comps[0] == Poly::from_int(m2.alg, 2) &&
                 two.comps[1] == Poly::from_int(m2.alg, -1),
             "theta(1) + theta(1) = " + format_witt(two));
    c.expect(two != teichmuller(Poly::from_int(m2.alg, 2), 1),
             "(2, -1) should differ from theta(2)");
}

void criterion_10() {
    Criterion c(10, "verify all --seed 1: byte-identical JSON, full run < 60 s");
    CliRun a = run_cli("--json verify all --seed 1");
    double first = c.seconds();
    CliRun b = run_cli("--json verify all --seed 1");
    c.expect(a.exit_code == 0, "first run exit code " + std::to_string(a.exit_code));
    c.expect(b.exit_code == 0, "second run exit code " + std::to_string(b.exit_code));
    c.expect(!a.output.empty() && strip_timing(a.output) == strip_timing(b.output),
             "runs differ outside timing fields");
    c.expect(a.output.find("\"verdict\": \"PASS\"") != std::string::npos,
             "verdict is not PASS");
    c.expect(first < 60.0, "single run took " + std::to_string(first) + " s");
    c.budget(120.0);  // two runs
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures) {
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
}
