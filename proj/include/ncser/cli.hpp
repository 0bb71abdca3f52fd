#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncser/deficit.hpp"
#include "ncser/hitting_set.hpp"
#include "ncser/io.hpp"
#include "ncser/two_cycle.hpp"

namespace ncser::cli {

// Exit codes: 0 success / positive verdict, 1 negative verdict,
// 2 usage or input error, 3 budget exhausted.
enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

namespace cli_detail {

inline std::string derive_path(const std::string& input, const std::string& suffix) {
    std::string stem = input;
    if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") stem.resize(stem.size() - 5);
    return stem + suffix;
}

inline HittingSetInstance parse_instance(const std::string& text) {
    Json j = io_detail::load(text);
    HittingSetInstance inst;
    inst.universe = io_detail::field(j, "universe").get<long long>();
    for (const auto& s : io_detail::field(j, "sets")) {
        std::vector<long long> set;
        for (const auto& x : s) set.push_back(x.get<long long>());
        inst.sets.push_back(std::move(set));
    }
    inst.check();
    return inst;
}

inline std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoll(part));
    return out;
}

inline void require_no_violations(const AnyCode& code) {
    auto print = [](const std::vector<Violation>& v) {
        if (v.empty()) return true;
        for (const auto& viol : v) std::cerr << "invalid code: " << viol.edge_id << ": " << viol.message << "\n";
        return false;
    };
    bool ok = std::visit([&](const auto& c) { return print(validate(c)); }, code);
    if (!ok) throw SchemaError("code fails validity");
}

inline std::string dot_dump(const SourcedGraph& g) {
    std::string out = "digraph code {\n";
    for (const auto& v : g.vertices) out += "  \"" + v + "\";\n";
    for (const auto& s : g.sources)
        out += "  \"" + s.id + "_origin\" [shape=point]; \"" + s.id + "_origin\" -> \"" + s.head +
               "\" [label=\"" + s.id + "\"];\n";
    for (const auto& e : g.edges)
        out += "  \"" + e.tail + "\" -> \"" + e.head + "\" [label=\"" + e.id + "\"];\n";
    return out + "}\n";
}

}  // namespace cli_detail

inline int run(std::vector<std::string> args) {
    using namespace cli_detail;
    CLI::App app{"network-code serializability toolkit"};
    app.require_subcommand(1);

    std::string code_path, second_path, out_path, cert_path, rows_arg, hit_arg, frac_arg;
    long long power_n = 2, field_p = 0, q_arg = 1;
    DeficitOptions deficit_opt;

    auto* check = app.add_subcommand("check", "decide serializability; certificate on failure");
    check->add_option("code", code_path)->required();
    check->add_option("--certificate", cert_path, "certificate output path");

    auto* serialize = app.add_subcommand("serialize", "emit a serialization schedule");
    serialize->add_option("code", code_path)->required();
    serialize->add_option("-o,--output", out_path);

    auto* vortex = app.add_subcommand("vortex", "emit the minimal information vortex");
    vortex->add_option("code", code_path)->required();
    vortex->add_option("-o,--output", out_path);

    auto* vsched = app.add_subcommand("verify-schedule", "verify a schedule against a code");
    vsched->add_option("code", code_path)->required();
    vsched->add_option("schedule", second_path)->required();

    auto* vvort = app.add_subcommand("verify-vortex", "verify a vortex certificate against a code");
    vvort->add_option("code", code_path)->required();
    vvort->add_option("vortex", second_path)->required();

    auto* entropy_cmd = app.add_subcommand("entropy", "emit the entropic vector");
    entropy_cmd->add_option("code", code_path)->required();
    entropy_cmd->add_option("-o,--output", out_path);

    auto* two = app.add_subcommand("two-cycle", "2-cycle entropic vector tools");
    two->require_subcommand(1);
    auto* tc_check = two->add_subcommand("check", "check the four inequality families");
    tc_check->add_option("vector", code_path)->required();
    auto* tc_realize = two->add_subcommand("realize", "realize a vector by a serializable code");
    tc_realize->add_option("vector", code_path)->required();
    tc_realize->add_option("-o,--output", out_path);

    auto* deficit_cmd = app.add_subcommand("deficit", "bounded brute-force serializability deficit");
    deficit_cmd->add_option("code", code_path)->required();
    deficit_cmd->add_option("--max-symbols", deficit_opt.max_symbols);
    deficit_cmd->add_option("--cap", deficit_opt.cap);
    deficit_cmd->add_option("--jobs", deficit_opt.jobs);
    deficit_cmd->add_option("-o,--output", out_path);

    auto* power = app.add_subcommand("power", "n-fold cartesian product");
    power->add_option("code", code_path)->required();
    power->add_option("-n", power_n)->required();
    power->add_option("-o,--output", out_path);

    auto* gen_hs = app.add_subcommand("gen-hitting-set", "build the hitting-set gadget code");
    gen_hs->add_option("instance", code_path)->required();
    gen_hs->add_option("--field", field_p, "field modulus (default 2, or fitted in fractional mode)");
    gen_hs->add_option("--hit", hit_arg, "comma-separated hitting set; adds its extension");
    gen_hs->add_option("--fractional", frac_arg, "comma-separated weights z_i; tensor extension");
    gen_hs->add_option("-q", q_arg, "power for the fractional extension");
    gen_hs->add_option("-o,--output", out_path);

    auto* extend = app.add_subcommand("extend", "append functionals to one edge");
    extend->add_option("code", code_path)->required();
    extend->add_option("edge", second_path)->required();
    extend->add_option("rows", rows_arg, "JSON rows, inline or @file")->required();
    extend->add_option("-o,--output", out_path);

    auto* dot = app.add_subcommand("dot", "print the sourced graph in DOT form");
    dot->add_option("code", code_path)->required();

    try {
        std::vector<const char*> argv{"ncser"};
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse((int)argv.size(), argv.data());

        if (check->parsed()) {
            AnyCode code = load_code(code_path);
            require_no_violations(code);
            if (cert_path.empty()) cert_path = derive_path(code_path, ".vortex.json");
            if (const auto* lin = std::get_if<LinearCode>(&code)) {
                auto outcome = greedy_serialize(*lin);
                if (outcome.serializable) {
                    std::cout << "serializable\n";
                    return kOk;
                }
                write_file(cert_path, emit_json(greedy_vortex(*lin, outcome)).dump(2) + "\n");
            } else {
                const auto& gen = std::get<GeneralCode>(code);
                auto outcome = greedy_serialize(gen);
                if (outcome.serializable) {
                    std::cout << "serializable\n";
                    return kOk;
                }
                write_file(cert_path, emit_json(greedy_vortex(gen, outcome)).dump(2) + "\n");
            }
            std::cout << "non-serializable\ncertificate: " << cert_path << "\n";
            return kNegative;
        }

        if (serialize->parsed()) {
            AnyCode code = load_code(code_path);
            require_no_violations(code);
            if (out_path.empty()) out_path = derive_path(code_path, ".schedule.json");
            bool ok = std::visit(
                [&](const auto& c) {
                    auto outcome = greedy_serialize(c);
                    if (!outcome.serializable) return false;
                    write_file(out_path, emit_json(outcome.schedule).dump(2) + "\n");
                    return true;
                },
                code);
            if (!ok) {
                std::cerr << "non-serializable: no schedule exists\n";
                return kNegative;
            }
            std::cout << "schedule: " << out_path << "\n";
            return kOk;
        }

        if (vortex->parsed()) {
            AnyCode code = load_code(code_path);
            require_no_violations(code);
            if (out_path.empty()) out_path = derive_path(code_path, ".vortex.json");
            bool nontrivial = std::visit(
                [&](const auto& c) {
                    auto outcome = greedy_serialize(c);
                    auto v = greedy_vortex(c, outcome);
                    write_file(out_path, emit_json(v).dump(2) + "\n");
                    return is_nontrivial(c, v);
                },
                code);
            std::cout << "vortex: " << out_path << (nontrivial ? " (nontrivial)" : " (trivial)") << "\n";
            return kOk;
        }

        if (vsched->parsed()) {
            AnyCode code = load_code(code_path);
            require_no_violations(code);
            ScheduleReport report;
            if (const auto* lin = std::get_if<LinearCode>(&code))
                report = verify_schedule(*lin, parse_linear_schedule(read_file(second_path), *lin));
            else
                report = verify_schedule(std::get<GeneralCode>(code),
                                         parse_general_schedule(read_file(second_path)));
            if (report.ok) {
                std::cout << "schedule verifies\n";
                return kOk;
            }
            std::cout << "schedule rejected: item " << report.item << " on edge " << report.edge;
            if (report.round >= 0) std::cout << " at round " << report.round;
            std::cout << ": " << report.message << "\n";
            return kNegative;
        }

        if (vvort->parsed()) {
            AnyCode code = load_code(code_path);
            require_no_violations(code);
            if (const auto* lin = std::get_if<LinearCode>(&code)) {
                auto v = parse_linear_vortex(read_file(second_path), *lin);
                if (!verify_vortex(*lin, v)) {
                    std::cout << "not an information vortex\n";
                    return kNegative;
                }
                std::cout << "information vortex ("
                          << (is_nontrivial(*lin, v) ? "nontrivial" : "trivial") << ")\n";
                return kOk;
            }
            const auto& gen = std::get<GeneralCode>(code);
            auto sv = parse_semivortex(read_file(second_path));
            switch (classify_semivortex(gen, sv)) {
                case VortexClass::Giv:
                    std::cout << "generalized information vortex ("
                              << (is_nontrivial(gen, sv) ? "nontrivial" : "trivial") << ")\n";
                    return kOk;
                case VortexClass::SemiVortexOnly:
                    std::cout << "semi-vortex only (containment strict somewhere)\n";
                    return kNegative;
                case VortexClass::Invalid:
                    std::cout << "not a semi-vortex\n";
                    return kNegative;
            }
        }

        if (entropy_cmd->parsed()) {
            AnyCode code = load_code(code_path);
            require_no_violations(code);
            if (out_path.empty()) out_path = derive_path(code_path, ".entropy.json");
            std::visit([&](const auto& c) { write_file(out_path, emit_json(entropic_vector(c)).dump(2) + "\n"); },
                       code);
            std::cout << "entropic vector: " << out_path << "\n";
            return kOk;
        }

        if (tc_check->parsed()) {
            auto v = two_cycle_from_entropic(parse_entropic_vector(read_file(code_path)));
            auto report = two_cycle_check(v);
            auto line = [](const char* name, bool ok) {
                std::cout << name << ": " << (ok ? "pass" : "FAIL") << "\n";
            };
            line("shannon", report.shannon);
            line("downstreamness", report.downstreamness);
            line("chicken-egg", report.chicken_egg);
            line("greedy", report.greedy);
            for (const auto& d : report.details) std::cerr << "  " << d << "\n";
            return report.all() ? kOk : kNegative;
        }

        if (tc_realize->parsed()) {
            auto v = two_cycle_from_entropic(parse_entropic_vector(read_file(code_path)));
            try {
                auto result = two_cycle_realize(v);
                if (out_path.empty()) out_path = derive_path(code_path, ".code.json");
                write_file(out_path, emit(result.code));
                std::cout << "realized at scale " << result.scale << ": " << out_path << "\n";
                return kOk;
            } catch (const TwoCycleRejection& r) {
                std::cerr << r.what() << "\n";
                return kNegative;
            }
        }

        if (deficit_cmd->parsed()) {
            AnyCode any = load_code(code_path);
            require_no_violations(any);
            const auto* lin = std::get_if<LinearCode>(&any);
            if (!lin) throw SchemaError("deficit search requires a linear code");
            auto result = lsd_bruteforce(*lin, deficit_opt);
            Json j;
            j["exhausted"] = result.exhausted;
            if (!result.exhausted) {
                j["gap_symbols"] = result.gap_symbols;
                j["gap_bits"] = result.gap_bits.is_rational() ? rat_str(result.gap_bits.rational())
                                                              : result.gap_bits.str();
                j["witness"] = Json::object();
                for (const auto& [edge, rows] : result.witness) j["witness"][edge] = io_detail::emit_rows(rows);
            } else {
                j["max_symbols"] = deficit_opt.max_symbols;
            }
            if (out_path.empty()) out_path = derive_path(code_path, ".deficit.json");
            write_file(out_path, j.dump(2) + "\n");
            if (result.exhausted) {
                std::cout << "deficit > " << deficit_opt.max_symbols << " (budget exhausted): "
                          << out_path << "\n";
                return kBudget;
            }
            std::cout << "deficit: " << result.gap_symbols << " symbol(s): " << out_path << "\n";
            return kOk;
        }

        if (power->parsed()) {
            AnyCode any = load_code(code_path);
            const auto* lin = std::get_if<LinearCode>(&any);
            if (!lin) throw SchemaError("power requires a linear code");
            if (out_path.empty())
                out_path = derive_path(code_path, ".pow" + std::to_string(power_n) + ".json");
            write_file(out_path, emit(cartesian_power(*lin, power_n)));
            std::cout << "power: " << out_path << "\n";
            return kOk;
        }

        if (gen_hs->parsed()) {
            auto inst = parse_instance(read_file(code_path));
            LinearCode code = [&] {
                if (!frac_arg.empty()) {
                    auto z = parse_int_list(frac_arg);
                    long long total = 0;
                    for (long long zi : z) total += zi;
                    long long p = field_p;
                    if (p == 0) {
                        p = std::max(2ll, total + 1);
                        while (true) {
                            try { FieldSpec probe(p); break; } catch (const std::invalid_argument&) { ++p; }
                        }
                    }
                    auto base = build_hitting_set_code(inst, FieldSpec(p));
                    return fractional_tensor_extension(base, inst, z, q_arg);
                }
                auto base = build_hitting_set_code(inst, FieldSpec(field_p == 0 ? 2 : field_p));
                if (!hit_arg.empty()) return hitting_set_extension(base, inst, parse_int_list(hit_arg));
                return base;
            }();
            if (out_path.empty()) out_path = derive_path(code_path, ".code.json");
            write_file(out_path, emit(code));
            std::cout << "code: " << out_path << "\n";
            return kOk;
        }

        if (extend->parsed()) {
            AnyCode any = load_code(code_path);
            const auto* lin = std::get_if<LinearCode>(&any);
            if (!lin) throw SchemaError("extend requires a linear code");
            std::string rows_text = rows_arg.size() && rows_arg[0] == '@'
                                        ? read_file(rows_arg.substr(1))
                                        : rows_arg;
            auto rows = io_detail::parse_rows(io_detail::load(rows_text), "extend");
            auto extended = extend_edge(*lin, second_path, rows);
            if (out_path.empty()) out_path = derive_path(code_path, ".extended.json");
            write_file(out_path, emit(extended));
            std::cout << "extended: " << out_path << "\n";
            return kOk;
        }

        if (dot->parsed()) {
            AnyCode any = load_code(code_path);
            std::visit([&](const auto& c) { std::cout << dot_dump(c.graph); }, any);
            return kOk;
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kOk;  // --help
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << e.what() << "\n";
        return kBudget;
    } catch (const SchemaError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace ncser::cli
