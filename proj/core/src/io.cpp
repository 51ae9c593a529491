#include "amucd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace amucd {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void schema_error(const std::string& origin, const std::string& what) {
    throw Error(ErrorCode::SchemaError, origin + ": " + what);
}

double number_at(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_number()) schema_error(origin, where + " must be a number");
    return j.get<double>();
}

Complex complex_at(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        schema_error(origin, where + " must be a [re, im] pair");
    const double re = number_at(j[0], origin, where + "[0]");
    const double im = number_at(j[1], origin, where + "[1]");
    if (!std::isfinite(re) || !std::isfinite(im))
        schema_error(origin, where + " must be finite");
    return {re, im};
}

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, origin + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError,
                    "cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

SignalSpec parse_signal_json(const json& j, const std::string& origin) {
    if (!j.is_object()) schema_error(origin, "top level must be an object");
    if (!j.contains("space") || !j["space"].is_string())
        schema_error(origin, "\"space\" must be \"hardy\" or \"pw\"");
    const std::string space_name = j["space"].get<std::string>();
    SpaceKind kind;
    if (space_name == "hardy")
        kind = SpaceKind::Hardy;
    else if (space_name == "pw")
        kind = SpaceKind::PaleyWiener;
    else
        schema_error(origin, "\"space\" must be \"hardy\" or \"pw\"");

    double h = 1.0;
    if (j.contains("h")) {
        h = number_at(j["h"], origin, "\"h\"");
        if (!(h > 0.0)) schema_error(origin, "\"h\" must be positive");
    }

    if (!j.contains("variant") || !j["variant"].is_string())
        schema_error(origin, "\"variant\" must be \"taylor\", \"kernels\" or \"spectrum\"");
    const std::string variant = j["variant"].get<std::string>();
    if (!j.contains("data") || !j["data"].is_array())
        schema_error(origin, "\"data\" must be an array");
    const json& data = j["data"];

    try {
        if (variant == "taylor") {
            if (kind != SpaceKind::Hardy)
                schema_error(origin, "variant \"taylor\" is restricted to \"hardy\"");
            std::vector<Complex> coeffs;
            coeffs.reserve(data.size());
            for (std::size_t i = 0; i < data.size(); ++i)
                coeffs.push_back(
                    complex_at(data[i], origin, "data[" + std::to_string(i) + "]"));
            return SignalSpec::taylor(std::move(coeffs));
        }
        if (variant == "kernels") {
            std::vector<KernelTerm> terms;
            terms.reserve(data.size());
            for (std::size_t i = 0; i < data.size(); ++i) {
                const std::string where = "data[" + std::to_string(i) + "]";
                const json& item = data[i];
                if (!item.is_object() || !item.contains("center") ||
                    !item.contains("coeff"))
                    schema_error(origin, where + " must carry \"center\" and \"coeff\"");
                KernelTerm term;
                term.element.center = complex_at(item["center"], origin, where + ".center");
                term.coeff = complex_at(item["coeff"], origin, where + ".coeff");
                if (item.contains("order")) {
                    if (!item["order"].is_number_integer() ||
                        item["order"].get<int>() < 0)
                        schema_error(origin, where + ".order must be a nonnegative integer");
                    term.element.order = item["order"].get<int>();
                }
                terms.push_back(term);
            }
            return SignalSpec::kernels(kind, h, std::move(terms));
        }
        if (variant == "spectrum") {
            if (kind != SpaceKind::PaleyWiener)
                schema_error(origin, "variant \"spectrum\" is restricted to \"pw\"");
            std::vector<SpectrumSample> samples;
            samples.reserve(data.size());
            for (std::size_t i = 0; i < data.size(); ++i) {
                const std::string where = "data[" + std::to_string(i) + "]";
                const json& item = data[i];
                if (!item.is_object() || !item.contains("t") || !item.contains("value"))
                    schema_error(origin, where + " must carry \"t\" and \"value\"");
                SpectrumSample s;
                s.t = number_at(item["t"], origin, where + ".t");
                s.value = complex_at(item["value"], origin, where + ".value");
                samples.push_back(s);
            }
            return SignalSpec::spectrum(h, std::move(samples));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        schema_error(origin, e.what());
    }
    schema_error(origin, "unknown variant \"" + variant + "\"");
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::SchemaError:
        case ErrorCode::BandViolation:
        case ErrorCode::DomainViolation:
        case ErrorCode::OrderCapExceeded:
        case ErrorCode::SpaceMismatch:
            return kExitParse;
        case ErrorCode::NumericalConsistency:
            return kExitNumerical;
        case ErrorCode::LinearDependence:
        case ErrorCode::AllCandidatesDependent:
        case ErrorCode::SingularSystem:
            return kExitDependence;
    }
    return kExitUsage;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::SchemaError, "invalid " + what + ": \"" + text + "\"");
    }
}

}  // namespace

SignalSpec parse_signal_spec_text(const std::string& text, const std::string& origin) {
    return parse_signal_json(parse_json(text, origin), origin);
}

SignalSpec parse_signal_spec(const std::filesystem::path& file) {
    return parse_signal_spec_text(read_file(file), file.string());
}

std::string decomposition_to_json(const Decomposition& d) {
    json j;
    j["elements"] = json::array();
    for (const auto& e : d.elements)
        j["elements"].push_back(
            {{"center", complex_to_json(e.center)}, {"order", e.order}});
    j["kernel_coeffs"] = json::array();
    for (const auto& c : d.kernel_coeffs) j["kernel_coeffs"].push_back(complex_to_json(c));
    j["ortho_coeffs"] = json::array();
    for (const auto& c : d.ortho_coeffs) j["ortho_coeffs"].push_back(complex_to_json(c));
    j["energy_track"] = d.energy_track;
    j["norm_sq_f"] = d.norm_sq_f;
    return j.dump(2) + "\n";
}

Decomposition decomposition_from_json(const std::string& text) {
    const std::string origin = "<decomposition>";
    const json j = parse_json(text, origin);
    if (!j.is_object()) schema_error(origin, "top level must be an object");
    for (const char* key : {"elements", "kernel_coeffs", "ortho_coeffs", "energy_track"})
        if (!j.contains(key) || !j[key].is_array())
            schema_error(origin, std::string("\"") + key + "\" must be an array");
    Decomposition d;
    for (std::size_t i = 0; i < j["elements"].size(); ++i) {
        const json& item = j["elements"][i];
        const std::string where = "elements[" + std::to_string(i) + "]";
        if (!item.is_object() || !item.contains("center") || !item.contains("order"))
            schema_error(origin, where + " must carry \"center\" and \"order\"");
        DictionaryElement e;
        e.center = complex_at(item["center"], origin, where + ".center");
        e.order = item["order"].get<int>();
        d.elements.push_back(e);
    }
    for (std::size_t i = 0; i < j["kernel_coeffs"].size(); ++i)
        d.kernel_coeffs.push_back(complex_at(j["kernel_coeffs"][i], origin, "kernel_coeffs"));
    for (std::size_t i = 0; i < j["ortho_coeffs"].size(); ++i)
        d.ortho_coeffs.push_back(complex_at(j["ortho_coeffs"][i], origin, "ortho_coeffs"));
    for (const auto& v : j["energy_track"]) d.energy_track.push_back(v.get<double>());
    if (!j.contains("norm_sq_f") || !j["norm_sq_f"].is_number())
        schema_error(origin, "\"norm_sq_f\" must be a number");
    d.norm_sq_f = j["norm_sq_f"].get<double>();
    if (d.kernel_coeffs.size() != d.elements.size())
        schema_error(origin, "kernel_coeffs and elements disagree in length");
    return d;
}

SignalSpec decomposition_as_signal(SpaceKind kind, double h, const Decomposition& d) {
    std::vector<KernelTerm> terms;
    terms.reserve(d.elements.size());
    for (std::size_t k = 0; k < d.elements.size(); ++k)
        terms.push_back(KernelTerm{d.elements[k], d.kernel_coeffs[k]});
    return SignalSpec::kernels(kind, h, std::move(terms));
}

std::vector<DictionaryElement> parse_points_file(const std::filesystem::path& file) {
    const std::string origin = file.string();
    const json j = parse_json(read_file(file), origin);
    if (!j.is_array()) schema_error(origin, "points file must be a JSON array");
    std::vector<DictionaryElement> elements;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& item = j[i];
        const std::string where = "[" + std::to_string(i) + "]";
        if (!item.is_object() || !item.contains("center"))
            schema_error(origin, where + " must carry \"center\"");
        DictionaryElement e;
        e.center = complex_at(item["center"], origin, where + ".center");
        if (item.contains("order")) {
            if (!item["order"].is_number_integer() || item["order"].get<int>() < 0)
                schema_error(origin, where + ".order must be a nonnegative integer");
            e.order = item["order"].get<int>();
        } else {
            // Coincidence-count rule: order = number of earlier occurrences.
            int count = 0;
            for (const auto& prior : elements) {
                if (std::abs(prior.center - e.center) <= 1e-9) {
                    e.center = prior.center;
                    ++count;
                }
            }
            e.order = count;
        }
        elements.push_back(e);
    }
    return elements;
}

std::string iteration_log_csv(const std::vector<IterationRow>& rows) {
    std::string out = "n,point_re,point_im,order,gain,residual_energy,bvc_ratio_at_selected\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += fmt_double(r.point.real());
        out += ',';
        out += fmt_double(r.point.imag());
        out += ',';
        out += std::to_string(r.order);
        out += ',';
        out += fmt_double(r.gain);
        out += ',';
        out += fmt_double(r.residual_energy);
        out += ',';
        out += fmt_double(r.bvc_at_selected);
        out += '\n';
    }
    return out;
}

CandidateGrid parse_grid_spec(const std::string& text, const SpaceModel& space) {
    const auto parts = split(text, ',');
    if (parts.empty()) throw Error(ErrorCode::SchemaError, "empty grid spec");
    if (parts[0].rfind("radial:", 0) == 0) {
        if (space.kind() != SpaceKind::Hardy)
            throw Error(ErrorCode::SchemaError,
                        "radial grid specs apply to the Hardy space only");
        int n_radial = 0, n_angular = 0;
        double r_max = 0.0;
        bool have_angular = false, have_rmax = false;
        for (const auto& part : parts) {
            const auto kv = split(part, ':');
            if (kv.size() != 2)
                throw Error(ErrorCode::SchemaError, "bad grid field: \"" + part + "\"");
            if (kv[0] == "radial") {
                n_radial = static_cast<int>(parse_number(kv[1], "radial count"));
            } else if (kv[0] == "angular") {
                n_angular = static_cast<int>(parse_number(kv[1], "angular count"));
                have_angular = true;
            } else if (kv[0] == "rmax") {
                r_max = parse_number(kv[1], "rmax");
                have_rmax = true;
            } else {
                throw Error(ErrorCode::SchemaError, "unknown grid field: \"" + kv[0] + "\"");
            }
        }
        if (n_radial < 1 || !have_angular || !have_rmax)
            throw Error(ErrorCode::SchemaError,
                        "hardy grid spec needs radial:N,angular:M,rmax:X");
        try {
            return make_hardy_grid(n_radial, n_angular, r_max);
        } catch (const std::invalid_argument& e) {
            throw Error(ErrorCode::SchemaError, e.what());
        }
    }
    if (parts[0].rfind("rect:", 0) == 0) {
        if (space.kind() != SpaceKind::PaleyWiener)
            throw Error(ErrorCode::SchemaError,
                        "rect grid specs apply to the Paley-Wiener space only");
        if (parts.size() != 3 || parts[2].rfind("step:", 0) != 0)
            throw Error(ErrorCode::SchemaError, "rect grid spec needs rect:X,Y,step:S");
        const double x = parse_number(parts[0].substr(5), "rect x extent");
        const double y = parse_number(parts[1], "rect y extent");
        const double step = parse_number(parts[2].substr(5), "rect step");
        try {
            return make_rect_grid(x, y, step);
        } catch (const std::invalid_argument& e) {
            throw Error(ErrorCode::SchemaError, e.what());
        }
    }
    throw Error(ErrorCode::SchemaError,
                "grid spec must start with \"radial:\" or \"rect:\"");
}

int run(const RunConfig& config, std::ostream& log) {
    try {
        const SignalSpec f = parse_signal_spec(config.signal_path);
        if (config.space && *config.space != f.kind)
            throw Error(ErrorCode::SchemaError,
                        "--space disagrees with the signal file");
        if (config.h && f.kind == SpaceKind::PaleyWiener &&
            std::abs(*config.h - f.h) > 1e-12 * std::max(1.0, f.h))
            throw Error(ErrorCode::SchemaError, "--h disagrees with the signal file");

        const SpaceModel space = (f.kind == SpaceKind::Hardy)
                                     ? SpaceModel::hardy()
                                     : SpaceModel::paley_wiener(f.h);
        int threads = config.threads;
        if (threads <= 0) {
            const unsigned hw = std::thread::hardware_concurrency();
            threads = static_cast<int>(hw == 0 ? 1 : std::min(hw, 64u));
        }

        Decomposition d;
        std::vector<IterationRow> rows;
        std::string reason;
        int exit_code = kExitOk;

        if (config.mode == RunMode::Adaptive) {
            const CandidateGrid grid = config.grid_spec
                                           ? parse_grid_spec(*config.grid_spec, space)
                                           : default_grid(space);
            DecomposeResult res = decompose(space, f, grid, config.stopping, threads);
            d = std::move(res.decomposition);
            rows = std::move(res.log);
            reason = to_string(res.reason);
            if (res.reason == StopReason::AllCandidatesDependent)
                exit_code = kExitDependence;
        } else {
            if (!config.points_path)
                throw Error(ErrorCode::SchemaError, "fixed mode requires --points FILE");
            const auto elements = parse_points_file(*config.points_path);
            d = project_fixed_points(space, f, elements);
            reason = "fixed_points";
            for (std::size_t k = 0; k < d.elements.size(); ++k)
                rows.push_back(IterationRow{
                    static_cast<int>(k + 1), d.elements[k].center,
                    d.elements[k].order, std::norm(d.ortho_coeffs[k]),
                    d.energy_track[k + 1], bvc_ratio(space, f, d.elements[k])});
        }

        const double final_residual = d.energy_track.back();
        const double relative =
            d.norm_sq_f > 0.0 ? final_residual / d.norm_sq_f : 0.0;

        std::filesystem::create_directories(config.out_dir);
        if (config.write_json) {
            write_file(config.out_dir / "decomposition.json", decomposition_to_json(d));
            json summary;
            summary["space"] = (f.kind == SpaceKind::Hardy) ? "hardy" : "pw";
            summary["h"] = f.h;
            summary["mode"] = (config.mode == RunMode::Adaptive) ? "adaptive" : "fixed";
            summary["elements"] = d.elements.size();
            summary["iterations"] = rows.size();
            summary["norm_sq_f"] = d.norm_sq_f;
            summary["final_residual"] = final_residual;
            summary["relative_residual"] = relative;
            summary["stop_reason"] = reason;
            write_file(config.out_dir / "summary.json", summary.dump(2) + "\n");
        }
        if (config.write_csv)
            write_file(config.out_dir / "iterations.csv", iteration_log_csv(rows));

        log << "amucd: " << d.elements.size() << " elements, relative residual "
            << relative << " (" << reason << ")\n";
        return exit_code;
    } catch (const Error& e) {
        log << "amucd: error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        log << "amucd: error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace amucd
