#include "critcouple/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace critcouple::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key + ": '" + text + "' is not a number");
    return v;
}

template <class Int = long long>
Int parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key + ": '" + text + "' is not an integer");
    return v;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key + ": '" + text + "' is not a boolean");
}

std::string join_reals(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_real(v[i]);
    }
    return out;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ParamInput parse_params(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw ConfigError("params: expected four comma-separated numbers N,s,p,alpha");
    return {parse_real("params", parts[0]), parse_real("params", parts[1]), parse_real("params", parts[2]),
            parse_real("params", parts[3])};
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const auto& part : split(text, ',')) out.push_back(parse_real("list", part));
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "params") {
        cfg.params = parse_params(value);
    } else if (key == "gamma") {
        cfg.gamma = parse_real(key, value);
    } else if (key == "grid_n") {
        const long long n = parse_integer(key, value);
        if (n < 16 || n > 1'000'000) throw ConfigError("grid_n: must lie in [16, 1000000]");
        cfg.grid_n = static_cast<int>(n);
    } else if (key == "half_width") {
        cfg.half_width = parse_real(key, value);
    } else if (key == "tol") {
        cfg.tol = parse_real(key, value);
    } else if (key == "max_iter") {
        const long long n = parse_integer(key, value);
        if (n < 0 || n > std::numeric_limits<int>::max()) throw ConfigError("max_iter: out of range");
        cfg.max_iter = static_cast<int>(n);
    } else if (key == "seed") {
        cfg.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "out") {
        cfg.out_dir = trim(value);
    } else if (key == "mask_radius") {
        cfg.mask_radius = parse_real(key, value);
    } else if (key == "eps_shift") {
        cfg.eps_shift = parse_real(key, value);
    } else if (key == "filter") {
        cfg.filter = trim(value);
    } else if (key == "golden") {
        cfg.golden = trim(value);
    } else if (key == "gamma_grid") {
        cfg.gamma_grid = parse_real_list(value);
    } else if (key == "S") {
        cfg.S = parse_real(key, value);
    } else if (key == "symmetrize") {
        cfg.symmetrize = parse_bool(key, value);
    } else if (key == "tails") {
        cfg.tails = parse_bool(key, value);
    } else {
        throw ConfigError("unknown config key '" + raw_key + "'");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        try {
            apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const RunConfig& c) {
    std::ostringstream os;
    if (c.params) {
        os << "params=" << format_real(c.params->N) << ',' << format_real(c.params->s) << ','
           << format_real(c.params->p) << ',' << format_real(c.params->alpha) << '\n';
    }
    if (c.gamma) os << "gamma=" << format_real(*c.gamma) << '\n';
    os << "grid_n=" << c.grid_n << '\n';
    os << "half_width=" << format_real(c.half_width) << '\n';
    os << "tol=" << format_real(c.tol) << '\n';
    os << "max_iter=" << c.max_iter << '\n';
    os << "seed=" << c.seed << '\n';
    if (!c.out_dir.empty()) os << "out=" << c.out_dir << '\n';
    if (c.mask_radius) os << "mask_radius=" << format_real(*c.mask_radius) << '\n';
    os << "eps_shift=" << format_real(c.eps_shift) << '\n';
    if (!c.filter.empty()) os << "filter=" << c.filter << '\n';
    if (!c.golden.empty()) os << "golden=" << c.golden << '\n';
    if (!c.gamma_grid.empty()) os << "gamma_grid=" << join_reals(c.gamma_grid) << '\n';
    if (c.S) os << "S=" << format_real(*c.S) << '\n';
    os << "symmetrize=" << (c.symmetrize ? "true" : "false") << '\n';
    os << "tails=" << (c.tails ? "true" : "false") << '\n';
    return os.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw std::invalid_argument("write_csv: row width differs from header");
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_real(r[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("error while writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    t.header = split(trim(line), ',');
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split(trim(line), ',');
        if (cells.size() != t.header.size())
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": wrong number of columns");
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                row.push_back(parse_real("csv", c));
            } catch (const ConfigError&) {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad number '" + c + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_function_csv(const std::filesystem::path& path, const gagliardo::DiscreteFunction& u) {
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(u.grid().n()));
    for (int i = 0; i < u.grid().n(); ++i) rows.push_back({u.grid().x(i), u[i]});
    write_csv(path, {"x", "value"}, rows);
}

gagliardo::DiscreteFunction read_function_csv(const std::filesystem::path& path, const gagliardo::Grid1D& grid) {
    const CsvTable t = read_csv(path);
    if (t.header != std::vector<std::string>{"x", "value"})
        throw std::runtime_error(path.string() + ": expected columns x,value");
    if (static_cast<int>(t.rows.size()) != grid.n())
        throw std::runtime_error(path.string() + ": row count does not match the grid");
    std::vector<double> v;
    for (int i = 0; i < grid.n(); ++i) {
        const auto& r = t.rows[static_cast<std::size_t>(i)];
        if (std::abs(r[0] - grid.x(i)) > 1e-9 * std::max(1.0, grid.half_width()))
            throw std::runtime_error(path.string() + ": x column does not match the cell centres");
        v.push_back(r[1]);
    }
    return gagliardo::DiscreteFunction(grid, std::move(v));
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
                    bool log_x) {
    constexpr double W = 640, H = 400, M = 50;
    const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (log_x && !(s.x[i] > 0.0))) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
    auto px = [&](double x) { return M + (tx(x) - x0) / (x1 - x0) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\">" << xml_escape(title)
        << "</text>\n";
    out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << M << "\" y=\"" << H - M + 15 << "\" font-size=\"10\">" << format_real(log_x ? std::pow(10.0, x0) : x0)
        << "</text>\n";
    out << "<text x=\"" << W - M << "\" y=\"" << H - M + 15 << "\" font-size=\"10\" text-anchor=\"end\">"
        << format_real(log_x ? std::pow(10.0, x1) : x1) << "</text>\n";
    out << "<text x=\"" << 2 << "\" y=\"" << H - M << "\" font-size=\"10\">" << format_real(y0) << "</text>\n";
    out << "<text x=\"" << 2 << "\" y=\"" << M << "\" font-size=\"10\">" << format_real(y1) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        out << "<polyline fill=\"none\" stroke=\"" << colours[k % 5] << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (log_x && !(s.x[i] > 0.0))) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << W - M - 5 << "\" y=\"" << M + 15 * (k + 1) << "\" text-anchor=\"end\" fill=\""
            << colours[k % 5] << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace critcouple::io
