#include "gwsym/cli.hpp"

#include "gwsym/hurwitz.hpp"
#include "gwsym/integrator.hpp"
#include "gwsym/json_io.hpp"
#include "gwsym/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace gwsym::cli {

namespace {

std::vector<int> parse_powers(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw CLI::ValidationError("--powers", "empty entry");
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw CLI::ValidationError("--powers", "no exponents given");
    return out;
}

std::vector<Partition> parse_classes(const std::string& s) {
    std::vector<Partition> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        std::vector<int> parts;
        std::stringstream ps(item);
        std::string p;
        while (std::getline(ps, p, ',')) parts.push_back(std::stoi(p));
        out.push_back(sorted_partition(parts));
    }
    return out;
}

EtaChoice parse_poles(const std::string& s) {
    EtaChoice c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--poles", "expected mark:degree pairs");
        c.pole_degrees.emplace_back(std::stoi(item.substr(0, colon)),
                                    std::stoi(item.substr(colon + 1)));
    }
    return c;
}

int env_threads() {
    const char* v = std::getenv("GWSYM_THREADS");
    if (!v) return 1;
    int t = std::atoi(v);
    return t >= 1 ? t : 1;
}

std::string partition_str(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

// ordered exponent vectors with the given sum
void compositions(int sum, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& cb) {
    if (parts == 1) {
        cur.push_back(sum);
        cb(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= sum; ++k) {
        cur.push_back(k);
        compositions(sum - k, parts - 1, cur, cb);
        cur.pop_back();
    }
}

struct CommonOpts {
    std::string format = "plain";
    int threads = env_threads();
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    cmd->add_option("--threads", c.threads, "Worker threads (env GWSYM_THREADS)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact descendant integrals on moduli of curves via coverings of genus 0 "
                 "symmetric-product strata"};
    app.require_subcommand(1);

    // bracket
    auto* cb = app.add_subcommand("bracket", "Evaluate <tau_{k_1}...tau_{k_n}>_g");
    int b_genus = 0;
    std::string b_powers, b_poles;
    bool b_audit = false, b_no_prune = false;
    CommonOpts b_common;
    cb->add_option("--genus", b_genus, "Genus g")->required();
    cb->add_option("--powers", b_powers, "Comma-separated exponents k_1,...,k_n")->required();
    cb->add_option("--poles", b_poles, "Covering choice as mark:degree pairs, e.g. 1:2,2:1");
    cb->add_flag("--audit", b_audit, "Print the per-term decomposition");
    cb->add_flag("--no-prune", b_no_prune, "Keep zero-weight boundary terms");
    add_common(cb, b_common);

    // strata
    auto* cs = app.add_subcommand("strata", "List the contributing coverings for a query");
    int s_genus = 0;
    std::string s_powers, s_poles;
    bool s_no_prune = false;
    CommonOpts s_common;
    cs->add_option("--genus", s_genus, "Genus g")->required();
    cs->add_option("--powers", s_powers, "Comma-separated exponents")->required();
    cs->add_option("--poles", s_poles, "Covering choice as mark:degree pairs");
    cs->add_flag("--no-prune", s_no_prune, "Keep zero-weight boundary terms");
    add_common(cs, s_common);

    // hurwitz
    auto* ch = app.add_subcommand("hurwitz", "Count permutation tuples with product identity");
    int h_degree = 1, h_brute_cap = kBruteCap;
    std::string h_classes;
    CommonOpts h_common;
    ch->add_option("--degree", h_degree, "Symmetric group degree d")->required();
    ch->add_option("--classes", h_classes,
                   "Semicolon-separated partitions, comma-separated parts, e.g. \"3;2,1\"")
        ->required();
    ch->add_option("--brute-cap", h_brute_cap, "Degree cap for the enumeration cross-check");
    add_common(ch, h_common);

    // chartable
    auto* cc = app.add_subcommand("chartable", "Exact character table of S_d");
    int c_degree = 1, c_cap = kCharacterTableCap;
    CommonOpts c_common;
    cc->add_option("--degree", c_degree, "Degree d")->required();
    cc->add_option("--cap", c_cap, "Degree cap");
    add_common(cc, c_common);

    // classalg
    auto* ca = app.add_subcommand("classalg", "Class algebra structure constants of S_d");
    int a_degree = 1, a_cap = kCharacterTableCap;
    CommonOpts a_common;
    ca->add_option("--degree", a_degree, "Degree d")->required();
    ca->add_option("--cap", a_cap, "Degree cap");
    add_common(ca, a_common);

    // verify
    auto* cv = app.add_subcommand("verify", "Compare the covering expansion with the recursion");
    int v_max_genus = 2, v_max_points = 2;
    CommonOpts v_common;
    cv->add_option("--max-genus", v_max_genus, "Largest genus in the sweep");
    cv->add_option("--max-points", v_max_points, "Largest number of marked points");
    add_common(cv, v_common);

    std::vector<std::string> argv_copy(args);
    std::vector<const char*> argv;
    argv.push_back("gwsym");
    for (auto& a : argv_copy) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*cb) {
            BracketQuery q{b_genus, parse_powers(b_powers)};
            BracketOptions opt;
            if (!b_poles.empty()) opt.choice = parse_poles(b_poles);
            opt.prune_zero_weight = !b_no_prune;
            opt.threads = b_common.threads;
            BracketResult res = bracket_full(q, opt);
            if (b_common.format == "json") {
                out << bracket_report(q, res, b_audit).dump(2) << "\n";
            } else if (b_common.format == "csv") {
                out << "genus,powers,value\n"
                    << q.genus << "," << b_powers << "," << to_string(res.value) << "\n";
            } else {
                out << to_string(res.value) << "\n";
                if (b_audit) {
                    out << "eta degree: " << to_string(res.eta_deg) << "\n";
                    int idx = 0;
                    for (const auto& t : res.terms)
                        out << "term " << ++idx << ": aut=" << t.aut_count
                            << " weight=" << to_string(t.weight)
                            << " contribution=" << to_string(t.contribution) << "\n";
                }
            }
            return 0;
        }
        if (*cs) {
            BracketQuery q{s_genus, parse_powers(s_powers)};
            std::optional<EtaChoice> choice;
            if (!s_poles.empty()) choice = parse_poles(s_poles);
            EtaLabel eta = build_eta(q.genus, q.points(), choice);
            StrataOptions sopt;
            sopt.prune_zero_weight = !s_no_prune;
            auto terms = contributing_terms(eta, q, sopt);
            out << strata_report(eta, q, terms).dump(2) << "\n";
            return 0;
        }
        if (*ch) {
            TupleSpec spec{h_degree, parse_classes(h_classes)};
            Integer all = tuple_count_all(spec);
            Integer trans = tuple_count_transitive(spec);
            auto all_b = tuple_count_all_brute(spec, h_brute_cap);
            auto trans_b = tuple_count_transitive_brute(spec, h_brute_cap);
            bool consistent = (!all_b || *all_b == all) && (!trans_b || *trans_b == trans);
            if (h_common.format == "json") {
                json j{{"schema", "1"},
                       {"degree", h_degree},
                       {"all", all.str()},
                       {"transitive", trans.str()},
                       {"brute_checked", all_b.has_value()},
                       {"consistent", consistent}};
                out << j.dump(2) << "\n";
            } else if (h_common.format == "csv") {
                out << "degree,all,transitive\n"
                    << h_degree << "," << all.str() << "," << trans.str() << "\n";
            } else {
                out << "all=" << all.str() << " transitive=" << trans.str();
                if (all_b)
                    out << " (enumeration: all=" << all_b->str()
                        << " transitive=" << trans_b->str() << ", "
                        << (consistent ? "consistent" : "INCONSISTENT") << ")";
                out << "\n";
            }
            return consistent ? 0 : 1;
        }
        if (*cc) {
            const auto& t = character_table(c_degree, c_cap);
            if (c_common.format == "json") {
                json rows = json::array();
                for (size_t r = 0; r < t.labels.size(); ++r) {
                    json row = json::array();
                    for (const auto& v : t.chi[r]) row.push_back(v.str());
                    rows.push_back({{"irreducible", t.labels[r]}, {"values", row}});
                }
                json cols = json::array();
                for (const auto& l : t.labels) cols.push_back(l);
                out << json{{"schema", "1"}, {"degree", c_degree}, {"classes", cols},
                            {"rows", rows}}
                           .dump(2)
                    << "\n";
            } else {
                const char* sep = c_common.format == "csv" ? "," : "\t";
                out << "irrep\\class";
                for (const auto& l : t.labels) out << sep << partition_str(l);
                out << "\n";
                for (size_t r = 0; r < t.labels.size(); ++r) {
                    out << partition_str(t.labels[r]);
                    for (const auto& v : t.chi[r]) out << sep << v.str();
                    out << "\n";
                }
            }
            return 0;
        }
        if (*ca) {
            auto constants = class_algebra_constants(a_degree, a_cap);
            if (a_common.format == "json") {
                json arr = json::array();
                for (const auto& [key, v] : constants) {
                    if (v == 0) continue;
                    const auto& [lam, mu, nu] = key;
                    arr.push_back(
                        {{"lambda", lam}, {"mu", mu}, {"nu", nu}, {"value", v.str()}});
                }
                out << json{{"schema", "1"}, {"degree", a_degree}, {"constants", arr}}.dump(2)
                    << "\n";
            } else {
                const char* sep = a_common.format == "csv" ? "," : " ";
                for (const auto& [key, v] : constants) {
                    if (v == 0) continue;
                    const auto& [lam, mu, nu] = key;
                    out << partition_str(lam) << sep << partition_str(mu) << sep
                        << partition_str(nu) << sep << v.str() << "\n";
                }
            }
            return 0;
        }
        if (*cv) {
            int failures = 0;
            for (int g = 1; g <= v_max_genus; ++g)
                for (int n = 1; n <= v_max_points; ++n) {
                    int total = 3 * g - 3 + n;
                    if (total < 0) continue;
                    std::vector<int> cur;
                    compositions(total, n, cur, [&](const std::vector<int>& ks) {
                        BracketQuery q{g, ks};
                        BracketOptions opt;
                        opt.threads = v_common.threads;
                        Rational lhs = bracket(q, opt);
                        Rational rhs = dvv_bracket(q);
                        bool ok = lhs == rhs;
                        if (!ok) ++failures;
                        out << (ok ? "ok   " : "FAIL ") << "g=" << g << " k=(";
                        for (size_t i = 0; i < ks.size(); ++i)
                            out << (i ? "," : "") << ks[i];
                        out << ") bracket=" << to_string(lhs)
                            << " oracle=" << to_string(rhs) << "\n";
                    });
                }
            out << (failures ? "verification FAILED\n" : "verification passed\n");
            return failures ? 1 : 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace gwsym::cli
