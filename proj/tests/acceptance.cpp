// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "qga/realize.hpp"

using namespace qga;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string run_cli(const std::string& args, int& exit_code) {
    const char* cli = std::getenv("QGA_CLI");
    if (!cli) return "";
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "";
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    exit_code = pclose(pipe);
    return out;
}

// ---- criterion 1: worked example reproduction -----------------------------

bool criterion1(std::string& detail) {
    auto t0 = Clock::now();
    const std::string line12 = "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))";
    const std::string line3 = "Q + 4 Q(z3) + 12 Q(z9) + 3 M3(Q(z9)) + M9(Q(z9))";
    WeddDecomp d1 = two_gen_decompose({3, 2, 2, 2, 2, 2});
    WeddDecomp d2 = two_gen_decompose({3, 2, 2, 2, 1, 2});
    WeddDecomp d3 = two_gen_decompose({3, 2, 2, 2, 0, 2});
    bool exact = d1.render() == line12 && d2.render() == line12 && d3.render() == line3;
    bool relations = decomp_equal(d1, d2) && !decomp_equal(d1, d3);
    double formula_time = seconds_since(t0);
    if (!exact || !relations) {
        detail = "formula output mismatch";
        return false;
    }
    if (formula_time >= 1.0) {
        detail = "formula path too slow: " + std::to_string(formula_time) + "s";
        return false;
    }
    // the CLI command must reproduce the same lines
    int code = -1;
    std::string cli_out = run_cli("example-729", code);
    if (!cli_out.empty()) {
        if (code != 0 || cli_out.find(line12) == std::string::npos ||
            cli_out.find(line3) == std::string::npos) {
            detail = "CLI example-729 output mismatch";
            return false;
        }
    }
    auto t1 = Clock::now();
    for (const TwoGenParams& t : {TwoGenParams{3, 2, 2, 2, 2, 2}, TwoGenParams{3, 2, 2, 2, 1, 2},
                                  TwoGenParams{3, 2, 2, 2, 0, 2}}) {
        RealizedGroup r = realize_two_gen(t);
        if (!decomp_equal(rational_decomposition(r.group), r.formula)) {
            detail = "oracle disagrees on " + t.str();
            return false;
        }
    }
    double oracle_time = seconds_since(t1);
    if (oracle_time >= 300.0) {
        detail = "oracle path too slow: " + std::to_string(oracle_time) + "s";
        return false;
    }
    std::ostringstream os;
    os << "formula " << formula_time << "s, oracle " << oracle_time << "s";
    detail = os.str();
    return true;
}

// ---- criterion 2: formula == oracle over the mandated corpus --------------

bool criterion2(std::string& detail) {
    std::vector<RealizedGroup> groups;
    for (Int n = 3; n <= 6; ++n)
        for (const TwoGenParams& t : p_good_tuples(3, n)) groups.push_back(realize_two_gen(t));
    groups.push_back(realize_nenciu(1, 3));
    groups.push_back(realize_nenciu(1, 5));
    groups.push_back(realize_nenciu(2, 5));
    groups.push_back(realize_lewis(1, 3));
    groups.push_back(realize_lewis(2, 3));
    for (const RealizedGroup& r : groups) {
        WeddDecomp oracle = rational_decomposition(character_table(r.group));
        if (!decomp_equal(oracle, r.formula)) {
            detail = r.name + ": formula " + r.formula.render() + " vs oracle " + oracle.render();
            return false;
        }
    }
    detail = std::to_string(groups.size()) + " groups";
    return true;
}

// ---- criterion 3: counting lemma vs exhaustive enumeration ----------------

void partitions_rec(Int remaining, Int minpart, std::vector<Int>& cur,
                    std::vector<std::vector<Int>>& out) {
    out.push_back(cur);
    for (Int part = minpart; part <= remaining; ++part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

bool criterion3(std::string& detail) {
    Int checked = 0;
    for (Int p : {2, 3, 5}) {
        std::vector<std::vector<Int>> parts;
        std::vector<Int> cur;
        partitions_rec(6, 1, cur, parts);
        for (const auto& part : parts) {
            AbelianPType t = make_type(p, part);
            // enumerate element orders
            std::vector<Int> moduli;
            for (Int a : t.exponents) moduli.push_back(ipow(p, a));
            std::map<Int, Int> count_by_exp;
            std::vector<Int> x(moduli.size(), 0);
            for (;;) {
                Int order = 1;
                for (size_t i = 0; i < x.size(); ++i)
                    order = std::max(order, moduli[i] / std::gcd(x[i], moduli[i]));
                ++count_by_exp[plog(p, order)];
                size_t d = 0;
                while (d < x.size() && ++x[d] == moduli[d]) x[d++] = 0;
                if (d == x.size()) break;
            }
            Int top = t.trivial() ? 0 : t.exponents.back();
            for (Int alpha = 1; alpha <= top + 1; ++alpha) {
                Int phi = ipow(p, alpha - 1) * (p - 1);
                Int elems = count_by_exp.count(alpha) ? count_by_exp[alpha] : 0;
                if (elems % phi != 0) {
                    detail = "enumeration not divisible by phi";
                    return false;
                }
                if (count_cyclic_subgroups(t, alpha) != elems / phi) {
                    detail = t.str() + " alpha=" + std::to_string(alpha);
                    return false;
                }
                ++checked;
            }
        }
    }
    detail = std::to_string(checked) + " (type, order) pairs";
    return true;
}

// ---- criterion 4: dimension conservation -----------------------------------

bool criterion4(std::string& detail) {
    Int produced = 0;
    for (const RealizedGroup& r : corpus("full")) {
        if (r.formula.group_order() == 0) continue;
        if (r.formula.dimension() != r.formula.group_order()) {
            detail = r.name + ": formula dimension mismatch";
            return false;
        }
        WeddDecomp oracle = rational_decomposition(character_table(r.group));
        if (oracle.dimension() != oracle.group_order()) {
            detail = r.name + ": oracle dimension mismatch";
            return false;
        }
        produced += 2;
    }
    // synthetic data: accepted inputs either decompose with the identity intact
    // or raise NegativeMultiplicity; rejections must be deterministic
    std::mt19937 rng(424242);
    auto rand_type = [&](Int p) {
        std::vector<Int> exps;
        Int rank = static_cast<Int>(rng() % 4);
        for (Int i = 0; i < rank; ++i) exps.push_back(1 + static_cast<Int>(rng() % 3));
        return make_type(p, exps);
    };
    Int accepted = 0, rejected = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Int p = (rng() % 2) ? 3 : 5;
        NestedGVZData d;
        d.p = p;
        d.abelianization = rand_type(p);
        Int delta = 0;
        Int layers = 1 + static_cast<Int>(rng() % 2);
        for (Int i = 0; i < layers; ++i) {
            delta += 1 + static_cast<Int>(rng() % 2);
            d.layers.push_back({delta, rand_type(p), rand_type(p)});
        }
        bool valid1 = true, valid2 = true;
        try {
            d.validate();
        } catch (const Error&) {
            valid1 = false;
        }
        try {
            d.validate();
        } catch (const Error&) {
            valid2 = false;
        }
        if (valid1 != valid2) {
            detail = "validation not deterministic";
            return false;
        }
        if (!valid1) {
            ++rejected;
            continue;
        }
        try {
            WeddDecomp w = decompose_nested_gvz(d);
            if (w.dimension() != w.group_order() || w.group_order() != d.group_order()) {
                detail = "synthetic dimension identity violated";
                return false;
            }
            ++accepted;
            ++produced;
        } catch (const Error& e) {
            if (e.code() != Errc::NegativeMultiplicity) {
                detail = std::string("unexpected error: ") + e.what();
                return false;
            }
        }
    }
    std::ostringstream os;
    os << produced << " decompositions, " << accepted << " synthetic accepted, " << rejected
       << " rejected";
    detail = os.str();
    return true;
}

// ---- criterion 5: idempotent theorem on the order <= 3^5 corpus ------------

bool criterion5(std::string& detail) {
    Int characters = 0;
    for (const RealizedGroup& r : corpus("small")) {
        if (!r.expect_nested) continue;  // theorem hypotheses: nested GVZ
        if (r.group.size() > 243) continue;
        CharTable t = character_table(r.group);
        PciReport rep = verify_pci_theorem(r.group, t);
        if (!rep.all_pass()) {
            for (const auto& c : rep.checks)
                if (!c.pass) detail = r.name + ": " + c.name + " " + c.detail;
            return false;
        }
        characters += static_cast<Int>(rep.checks.size()) / 5;
    }
    detail = std::to_string(characters) + " nonlinear characters";
    return true;
}

// ---- criterion 6: predicate suite ------------------------------------------

bool criterion6(std::string& detail) {
    for (const RealizedGroup& r : corpus("full")) {
        CharTable t = r.group.size() <= oracle_bound() ? character_table(r.group)
                                                       : gvz_fast_table(r.group, r.witness);
        bool nested = is_nested_gvz(t);
        if (nested != r.expect_nested) {
            detail = r.name + ": nested predicate " + (nested ? "true" : "false");
            return false;
        }
        if (!r.expect_nested && is_gvz(t)) {
            detail = r.name + ": control group claims GVZ";
            return false;
        }
        // Galois-conjugate <=> equal kernel for same-degree nonlinear pairs
        GaloisClasses gc = galois_classes(t);
        std::vector<std::vector<Int>> kernels(static_cast<size_t>(t.char_count()));
        for (Int i = 0; i < t.char_count(); ++i)
            if (t.degrees[static_cast<size_t>(i)] > 1)
                kernels[static_cast<size_t>(i)] = char_kernel(t, i).elements;
        for (Int i = 0; i < t.char_count(); ++i) {
            if (t.degrees[static_cast<size_t>(i)] == 1) continue;
            for (Int j = i + 1; j < t.char_count(); ++j) {
                if (t.degrees[static_cast<size_t>(j)] != t.degrees[static_cast<size_t>(i)]) continue;
                bool conj = gc.class_of[static_cast<size_t>(i)] == gc.class_of[static_cast<size_t>(j)];
                bool same_ker = kernels[static_cast<size_t>(i)] == kernels[static_cast<size_t>(j)];
                if (conj != same_ker) {
                    detail = r.name + ": Galois/kernel equivalence fails";
                    return false;
                }
            }
        }
    }
    detail = "corpus full";
    return true;
}

// ---- criterion 7: corollary sweep -------------------------------------------

bool criterion7(std::string& detail) {
    for (Int gamma : {Int(2), Int(3)}) {
        Int bound = (gamma - 1 + 1) / 2;  // ceil((gamma-1)/2)
        WeddDecomp ref = closed_form_tau5({3, gamma, gamma, gamma, bound, gamma});
        for (Int rho = bound; rho <= gamma; ++rho)
            if (!decomp_equal(ref, closed_form_tau5({3, gamma, gamma, gamma, rho, gamma}))) {
                detail = "gamma=" + std::to_string(gamma) + " rho=" + std::to_string(rho) +
                         " not isomorphic";
                return false;
            }
        if (decomp_equal(ref, closed_form_tau5({3, gamma, gamma, gamma, 0, gamma}))) {
            detail = "gamma=" + std::to_string(gamma) + " rho=0 unexpectedly isomorphic";
            return false;
        }
    }
    // the CLI sweep must group rho >= 1 together for gamma = 2
    int code = -1;
    std::string out = run_cli("sweep --gamma 2 --p 3", code);
    if (!out.empty() && code != 0) {
        detail = "CLI sweep failed";
        return false;
    }
    detail = "gamma in {2,3}";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"worked-example reproduction (example-729)", 310.0, criterion1},
        {"formula == oracle on the mandated corpus", 1800.0, criterion2},
        {"counting lemma vs exhaustive enumeration (p <= 5, order <= p^6)", 60.0, criterion3},
        {"dimension conservation (corpus + 1000 synthetic)", 1800.0, criterion4},
        {"idempotent theorem on the order <= 3^5 corpus", 600.0, criterion5},
        {"predicate suite (nested GVZ, control, Galois/kernel lemma)", 1800.0, criterion6},
        {"corollary sweep (gamma in {2,3})", 60.0, criterion7},
    };
    bool all = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto start = Clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = seconds_since(start);
        if (secs > criteria[i].limit_seconds) {
            pass = false;
            detail += " [over time budget]";
        }
        std::printf("%s criterion %zu: %s (%.2fs) %s\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), secs, detail.c_str());
        all = all && pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
