#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "critcouple/gagliardo.hpp"

namespace critcouple::io {

/// Malformed config text, unknown key or unreadable file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raw exponent input "N,s,p,alpha"; validation happens later so that every
/// violation can be reported at once.
struct ParamInput {
    double N;
    double s;
    double p;
    double alpha;
    bool operator==(const ParamInput&) const = default;
};

/// Everything a subcommand can be configured with.
struct RunConfig {
    std::optional<ParamInput> params;
    std::optional<double> gamma;
    int grid_n = 128;
    double half_width = 20.0;
    double tol = 1e-10;
    int max_iter = 20000;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::optional<double> mask_radius;
    double eps_shift = 0.0;
    std::string filter;
    std::string golden;
    std::vector<double> gamma_grid;
    std::optional<double> S;
    bool symmetrize = false;
    bool tails = true;

    bool operator==(const RunConfig&) const = default;
};

/// "N,s,p,alpha" with exactly four numbers.
ParamInput parse_params(const std::string& text);
/// Comma-separated list of reals, e.g. "1e-6,1e-3,0.1".
std::vector<double> parse_real_list(const std::string& text);

/// Applies one key=value assignment; unknown keys and bad values throw ConfigError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value text; '#' starts a comment, blank lines are ignored.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Every field written with 17 significant digits, so parse_config restores it exactly.
std::string format_config(const RunConfig& cfg);

/// 17 significant digits, enough for the text to parse back to the same double.
std::string format_real(double x);

/// Writes a header row and then rows; every number with 17 significant digits.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Columns x, value.
void write_function_csv(const std::filesystem::path& path, const gagliardo::DiscreteFunction& u);
/// Reads x, value and places the samples on grid; the x column must match the cell centres.
gagliardo::DiscreteFunction read_function_csv(const std::filesystem::path& path, const gagliardo::Grid1D& grid);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal line plot. With log_x the x values are placed on a log10 axis.
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
                    bool log_x = false);

}  // namespace critcouple::io
