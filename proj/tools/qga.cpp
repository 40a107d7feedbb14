// qga: Wedderburn decompositions of rational group algebras of nested GVZ
// p-groups, with a brute-force character-theoretic oracle.

#include <future>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qga/realize.hpp"

namespace {

using namespace qga;

int classify_exit(const Error& e) {
    switch (e.code()) {
        case Errc::BadSpec:
        case Errc::InvalidTuple:
        case Errc::PrimeTooSmall:
        case Errc::BadClass:
        case Errc::NotOddPrime:
        case Errc::NotTau5:
        case Errc::NotPGroup:
        case Errc::InfiniteGroup:
        case Errc::NotOddPGroup:
        case Errc::BoundExceeded:
        case Errc::Overflow:
            return 2;
        default:
            return 1;
    }
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

// shared group/family selection flags
struct Select {
    std::string family;
    Int p = 3;
    Int n = 1;
    std::string tuple;          // a,b,g,r,s
    std::string abelian;        // "3:1,2"
    std::string abelianization; // exponent list
    std::string center;
    std::string center_mod_derived;
    Int sqrt_index = 1;
    std::string spec_json;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "two_gen | nenciu | lewis | p5_class2 | p5_class3 | maxclass81");
        cmd->add_option("--p", p, "prime p");
        cmd->add_option("--n", n, "family index n");
        cmd->add_option("--tuple", tuple, "two_gen tuple alpha,beta,gamma,rho,sigma");
        cmd->add_option("--abelian", abelian, "abelian p-type, e.g. 3:1,2");
        cmd->add_option("--abelianization", abelianization, "abelianization exponents, e.g. 1,1,1");
        cmd->add_option("--center", center, "center exponents (p5_class2)");
        cmd->add_option("--center-mod-derived", center_mod_derived, "Z(G)/G' exponents (p5_class2)");
        cmd->add_option("--sqrt-index", sqrt_index, "|G/Z(G)|^{1/2} (p5_class2)");
        cmd->add_option("--spec", spec_json, "family spec as JSON");
    }

    void load_json() {
        if (spec_json.empty()) return;
        nlohmann::json j = nlohmann::json::parse(spec_json, nullptr, false);
        if (j.is_discarded()) fail(Errc::BadSpec, "--spec is not valid JSON");
        family = j.value("family", family);
        if (j.contains("p")) p = j["p"].get<Int>();
        if (j.contains("n")) n = j["n"].get<Int>();
        if (j.contains("alpha"))
            tuple = std::to_string(j["alpha"].get<Int>()) + "," + std::to_string(j["beta"].get<Int>()) +
                    "," + std::to_string(j["gamma"].get<Int>()) + "," + std::to_string(j["rho"].get<Int>()) +
                    "," + std::to_string(j["sigma"].get<Int>());
        if (j.contains("abelianization")) {
            abelianization.clear();
            for (Int v : j["abelianization"].get<std::vector<Int>>())
                abelianization += (abelianization.empty() ? "" : ",") + std::to_string(v);
        }
        if (j.contains("exponents")) {
            abelian = std::to_string(p) + ":";
            bool first = true;
            for (Int v : j["exponents"].get<std::vector<Int>>()) {
                abelian += (first ? "" : ",") + std::to_string(v);
                first = false;
            }
        }
    }

    TwoGenParams two_gen_params() const {
        std::vector<Int> v = parse_int_list(tuple);
        if (v.size() != 5) fail(Errc::BadSpec, "--tuple needs five entries alpha,beta,gamma,rho,sigma");
        return TwoGenParams{p, v[0], v[1], v[2], v[3], v[4]};
    }

    AbelianPType abelian_type_arg() const {
        auto colon = abelian.find(':');
        if (colon == std::string::npos) fail(Errc::BadSpec, "--abelian expects P:e1,e2,...");
        Int ap = std::stoll(abelian.substr(0, colon));
        return make_type(ap, parse_int_list(abelian.substr(colon + 1)));
    }

    bool has_abelian() const { return !abelian.empty(); }

    /// Formula-side decomposition.
    WeddDecomp decompose() const {
        if (has_abelian()) return decompose_abelian(abelian_type_arg());
        if (family == "two_gen") return two_gen_decompose(two_gen_params());
        if (family == "nenciu") return closed_form_nenciu(n, p);
        if (family == "lewis") return closed_form_lewis(n, p);
        if (family == "p5_class3") {
            P5Input in;
            in.p = p;
            in.nilpotency_class = 3;
            in.abelianization = make_type(p, parse_int_list(abelianization));
            return p5_decompose(in);
        }
        if (family == "p5_class2") {
            P5Input in;
            in.p = p;
            in.nilpotency_class = 2;
            in.abelianization = make_type(p, parse_int_list(abelianization));
            in.center = make_type(p, parse_int_list(center));
            in.center_mod_derived = center_mod_derived.empty()
                                        ? make_type(p, {})
                                        : make_type(p, parse_int_list(center_mod_derived));
            in.center_index_sqrt = sqrt_index;
            return p5_decompose(in);
        }
        fail(Errc::BadSpec, "no decomposable family selected (" + family + ")");
    }

    /// Concrete realization for the oracle-side commands.
    RealizedGroup realize() const {
        if (has_abelian()) return realize_abelian(abelian_type_arg());
        if (family == "two_gen") return realize_two_gen(two_gen_params());
        if (family == "nenciu") return realize_nenciu(n, p);
        if (family == "lewis") return realize_lewis(n, p);
        if (family == "maxclass81") return realize_maximal_class_81();
        fail(Errc::BadSpec, "family " + family + " has no concrete realization");
    }
};

std::uint64_t fnv_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

void print_decomp(const WeddDecomp& d, const std::string& format) {
    if (format == "json")
        std::cout << d.to_json() << "\n";
    else
        std::cout << d.render() << "\n";
}

const char* kExample729Line12 = "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))";
const char* kExample729Line3 = "Q + 4 Q(z3) + 12 Q(z9) + 3 M3(Q(z9)) + M9(Q(z9))";

int run_example_729(bool with_oracle) {
    TwoGenParams g1{3, 2, 2, 2, 2, 2}, g2{3, 2, 2, 2, 1, 2}, g3{3, 2, 2, 2, 0, 2};
    WeddDecomp d1 = two_gen_decompose(g1), d2 = two_gen_decompose(g2), d3 = two_gen_decompose(g3);
    std::cout << g1.str() << ": " << d1.render() << "\n";
    std::cout << g2.str() << ": " << d2.render() << "\n";
    std::cout << g3.str() << ": " << d3.render() << "\n";
    bool ok = d1.render() == kExample729Line12 && d2.render() == kExample729Line12 &&
              d3.render() == kExample729Line3 && decomp_equal(d1, d2) && !decomp_equal(d1, d3);
    std::cout << "QG1 == QG2: " << (decomp_equal(d1, d2) ? "yes" : "NO") << "\n";
    std::cout << "QG3 distinct: " << (!decomp_equal(d1, d3) ? "yes" : "NO") << "\n";
    if (with_oracle) {
        for (const TwoGenParams& t : {g1, g2, g3}) {
            RealizedGroup r = realize_two_gen(t);
            WeddDecomp oracle = rational_decomposition(r.group);
            bool eq = decomp_equal(oracle, r.formula);
            std::cout << "oracle " << t.str() << ": " << (eq ? "match" : "MISMATCH") << "\n";
            ok = ok && eq;
        }
    }
    std::cout << (ok ? "example-729: PASS" : "example-729: FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_verify(const std::string& corpus_tag, const Select& sel, bool with_pci,
               const std::string& format) {
    std::vector<RealizedGroup> groups;
    if (!corpus_tag.empty())
        groups = corpus(corpus_tag);
    else
        groups.push_back(sel.realize());
    VerifyOptions opt;
    opt.with_pci = with_pci;
    bool all = true;
    nlohmann::json out = nlohmann::json::array();
    for (const RealizedGroup& r : groups) {
        VerifyReport rep = verify_group(r, opt);
        all = all && rep.all_pass();
        if (format == "json") {
            out.push_back(nlohmann::json::parse(rep.to_json()));
        } else {
            std::cout << rep.group << ": " << (rep.all_pass() ? "pass" : "FAIL") << "\n";
            for (const auto& c : rep.checks)
                if (!c.pass) std::cout << "  FAIL " << c.name << " " << c.detail << "\n";
        }
    }
    if (format == "json") std::cout << out.dump(2) << "\n";
    return all ? 0 : 1;
}

int run_sweep(Int gamma, Int p, Int rho_min, Int rho_max) {
    std::vector<Int> rhos;
    for (Int r = rho_min; r <= rho_max; ++r) rhos.push_back(r);
    std::vector<std::future<WeddDecomp>> jobs;
    for (Int r : rhos)
        jobs.push_back(std::async(std::launch::async, [=] {
            return closed_form_tau5(TwoGenParams{p, gamma, gamma, gamma, r, gamma});
        }));
    std::map<std::uint64_t, std::vector<Int>> groups;
    for (size_t i = 0; i < rhos.size(); ++i) {
        WeddDecomp d = jobs[i].get();
        std::uint64_t h = fnv_hash(d.render());
        std::cout << "rho=" << rhos[i] << " hash=" << std::hex << h << std::dec << " " << d.render()
                  << "\n";
        groups[h].push_back(rhos[i]);
    }
    for (const auto& [h, members] : groups) {
        std::cout << "class " << std::hex << h << std::dec << ":";
        for (Int r : members) std::cout << " rho=" << r;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational group algebra decompositions of nested GVZ p-groups"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "text | json")->capture_default_str();

    Select dsel, osel, vsel, isel;

    CLI::App* cmd_decompose = app.add_subcommand("decompose", "formula-side Wedderburn decomposition");
    dsel.attach(cmd_decompose);

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force character-theoretic decomposition");
    osel.attach(cmd_oracle);

    CLI::App* cmd_verify = app.add_subcommand("verify", "formula vs oracle plus predicate checks");
    std::string corpus_tag;
    bool with_pci = false;
    cmd_verify->add_option("--corpus", corpus_tag, "small | full");
    cmd_verify->add_flag("--pci", with_pci, "also verify the idempotent theorem");
    vsel.attach(cmd_verify);

    CLI::App* cmd_count = app.add_subcommand("count-cyclic", "count cyclic subgroups of an abelian p-group");
    Int cp = 3, calpha = 1;
    std::string cexps;
    cmd_count->add_option("--p", cp, "prime")->required();
    cmd_count->add_option("--exponents", cexps, "type exponents, e.g. 1,2")->required();
    cmd_count->add_option("--alpha", calpha, "subgroup order exponent")->required();

    CLI::App* cmd_idem = app.add_subcommand("idempotents", "primitive central idempotent checks");
    isel.attach(cmd_idem);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "tau_n5 rho-sweep grouped by decomposition");
    Int sgamma = 2, sp = 3, srho_min = 0, srho_max = -1;
    cmd_sweep->add_option("--gamma", sgamma, "gamma")->required();
    cmd_sweep->add_option("--p", sp, "prime");
    cmd_sweep->add_option("--rho-min", srho_min, "first rho");
    cmd_sweep->add_option("--rho-max", srho_max, "last rho (default gamma)");

    CLI::App* cmd_example = app.add_subcommand("example-729", "reproduce the order-729 worked example");
    bool with_oracle = false;
    cmd_example->add_flag("--with-oracle", with_oracle, "also run the oracle on all three groups");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_decompose->parsed()) {
            dsel.load_json();
            print_decomp(dsel.decompose(), format);
            return 0;
        }
        if (cmd_oracle->parsed()) {
            osel.load_json();
            RealizedGroup r = osel.realize();
            print_decomp(rational_decomposition(oracle_table(r)), format);
            return 0;
        }
        if (cmd_verify->parsed()) {
            vsel.load_json();
            return run_verify(corpus_tag, vsel, with_pci, format);
        }
        if (cmd_count->parsed()) {
            std::cout << count_cyclic_subgroups(make_type(cp, parse_int_list(cexps)), calpha) << "\n";
            return 0;
        }
        if (cmd_idem->parsed()) {
            isel.load_json();
            RealizedGroup r = isel.realize();
            PciReport rep = verify_pci_theorem(r.group, oracle_table(r));
            std::cout << rep.to_json() << "\n";
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            if (srho_max < 0) srho_max = sgamma;
            return run_sweep(sgamma, sp, srho_min, srho_max);
        }
        if (cmd_example->parsed()) return run_example_729(with_oracle);
    } catch (const qga::Error& e) {
        std::cerr << "error [" << qga::errc_name(e.code()) << "]: " << e.what() << "\n";
        return classify_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
