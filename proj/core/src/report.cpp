// SPDX-License-Identifier: Apache-2.0
//
// hris-uav: joint channel and direction estimation for HRIS-assisted UAV links
// Copyright (C) 2026 The hris-uav authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hris/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hris/errors.hpp"

namespace hris
{
    namespace
    {
        using json = nlohmann::json;

        std::string num(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::vector<std::string> split(std::string_view line, char sep)
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            while (true)
            {
                const std::size_t pos = line.find(sep, start);
                out.emplace_back(line.substr(start, pos - start));
                if (pos == std::string_view::npos)
                    return out;
                start = pos + 1;
            }
        }

        double to_double(const std::string &s)
        {
            // from_chars keeps subnormals, which stod reports as out of range
            double v = 0.0;
            const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec == std::errc() && end == s.data() + s.size() && !s.empty())
                return v;
            if (s == "nan" || s == "-nan")
                return std::numeric_limits<double>::quiet_NaN();
            if (s == "inf")
                return std::numeric_limits<double>::infinity();
            if (s == "-inf")
                return -std::numeric_limits<double>::infinity();
            throw IoError("malformed number '" + s + "' in CSV");
        }

        long long to_integer(const std::string &s)
        {
            std::size_t used = 0;
            long long v = 0;
            try
            {
                v = std::stoll(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used != s.size() || s.empty())
                throw IoError("malformed integer '" + s + "' in CSV");
            return v;
        }

        std::string trials_schema_line()
        {
            return "# schema hris-trials v" + std::to_string(csv_schema_version);
        }

        std::string join(const std::vector<std::string> &cols)
        {
            std::string out;
            for (std::size_t i = 0; i < cols.size(); ++i)
                out += (i ? "," : "") + cols[i];
            return out;
        }

        json finite_or_null(double v)
        {
            return std::isfinite(v) ? json(v) : json(nullptr);
        }

        // Minimal SVG canvas with a linear x axis and a linear or log10 y axis
        struct Canvas
        {
            double x0, x1, y0, y1;
            bool log_y;
            int w = 640, h = 420, left = 70, right = 170, top = 30, bottom = 50;
            std::ostringstream body;

            Canvas(double x_lo, double x_hi, double y_lo, double y_hi, bool log_scale)
                : x0(x_lo), x1(x_hi), y0(y_lo), y1(y_hi), log_y(log_scale)
            {
            }

            double px(double x) const { return left + (x - x0) / (x1 - x0) * (w - left - right); }
            double py(double y) const
            {
                const double v = log_y ? std::log10(y) : y;
                const double lo = log_y ? std::log10(y0) : y0;
                const double hi = log_y ? std::log10(y1) : y1;
                return top + (hi - v) / (hi - lo) * (h - top - bottom);
            }

            std::string finish(const std::string &title, const std::string &xlabel, const std::string &ylabel)
            {
                std::ostringstream s;
                s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
                  << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
                  << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
                  << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n"
                  << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w - left - right << "\" height=\""
                  << h - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
                for (int i = 0; i <= 4; ++i)
                {
                    const double xv = x0 + (x1 - x0) * i / 4.0;
                    s << "<text x=\"" << px(xv) << "\" y=\"" << h - bottom + 16 << "\" text-anchor=\"middle\">"
                      << num_short(xv) << "</text>\n";
                    const double yv = log_y ? std::pow(10.0, std::log10(y0) + (std::log10(y1) - std::log10(y0)) * i / 4.0)
                                            : y0 + (y1 - y0) * i / 4.0;
                    s << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
                      << num_short(yv) << "</text>\n";
                }
                s << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">"
                  << xlabel << "</text>\n"
                  << "<text transform=\"translate(16," << (top + h - bottom) / 2
                  << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n"
                  << body.str() << "</svg>\n";
                return s.str();
            }

            static std::string num_short(double v)
            {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3g", v);
                return buf;
            }
        };

        const char *palette(std::size_t i)
        {
            static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
            return colors[i % 7];
        }
    }

    const std::vector<std::string> &trial_columns()
    {
        static const std::vector<std::string> cols{
            "trial", "seed", "power_dbm", "eps1", "nmse_h1_init", "nmse_h1_refined", "nmse_h2",
            "theta_err_norefine_rad", "phi_err_norefine_rad", "theta_err_refined_rad", "phi_err_refined_rad",
            "crlb_h1", "crlb_h2", "iters_step1", "iters_step2", "iters_step3", "converged_all", "ms_total"};
        return cols;
    }

    const std::vector<std::string> &aggregate_columns()
    {
        static const std::vector<std::string> cols{
            "power_dbm", "eps1", "trials",
            "nmse_h1_init_mean", "nmse_h1_init_lo", "nmse_h1_init_hi",
            "nmse_h1_refined_mean", "nmse_h1_refined_lo", "nmse_h1_refined_hi",
            "nmse_h2_mean", "nmse_h2_lo", "nmse_h2_hi",
            "rmse_theta_norefine_rad", "rmse_phi_norefine_rad", "rmse_theta_refined_rad", "rmse_phi_refined_rad",
            "crlb_h1", "crlb_h2", "crlb_h1_norm", "crlb_h2_norm",
            "converged_fraction", "aoa_failures", "flagged_trials"};
        return cols;
    }

    std::string trials_csv(std::span<const TrialRecord> records)
    {
        std::string out = trials_schema_line() + "\n" + join(trial_columns()) + "\n";
        for (const TrialRecord &r : records)
        {
            out += std::to_string(r.trial) + "," + std::to_string(r.seed) + "," + num(r.power_dbm) + "," + num(r.eps1) +
                   "," + num(r.nmse_h1_init) + "," + num(r.nmse_h1_refined) + "," + num(r.nmse_h2) + "," +
                   num(r.theta_err_norefine_rad) + "," + num(r.phi_err_norefine_rad) + "," +
                   num(r.theta_err_refined_rad) + "," + num(r.phi_err_refined_rad) + "," + num(r.crlb_h1) + "," +
                   num(r.crlb_h2) + "," + std::to_string(r.iters_step1) + "," + std::to_string(r.iters_step2) + "," +
                   std::to_string(r.iters_step3) + "," + (r.converged_all ? "1" : "0") + "," + num(r.ms_total) + "\n";
        }
        return out;
    }

    std::vector<TrialRecord> parse_trials_csv(std::string_view text)
    {
        std::vector<TrialRecord> out;
        std::istringstream in{std::string(text)};
        std::string line;
        if (!std::getline(in, line) || line != trials_schema_line())
            throw IoError("per-trial CSV: missing or unsupported schema line");
        if (!std::getline(in, line) || line != join(trial_columns()))
            throw IoError("per-trial CSV: header does not match the schema");
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const std::vector<std::string> f = split(line, ',');
            if (f.size() != trial_columns().size())
                throw IoError("per-trial CSV: row has " + std::to_string(f.size()) + " fields");
            TrialRecord r;
            r.trial = static_cast<int>(to_integer(f[0]));
            try
            {
                r.seed = std::stoull(f[1]);
            }
            catch (const std::exception &)
            {
                throw IoError("per-trial CSV: malformed seed '" + f[1] + "'");
            }
            r.power_dbm = to_double(f[2]);
            r.eps1 = to_double(f[3]);
            r.nmse_h1_init = to_double(f[4]);
            r.nmse_h1_refined = to_double(f[5]);
            r.nmse_h2 = to_double(f[6]);
            r.theta_err_norefine_rad = to_double(f[7]);
            r.phi_err_norefine_rad = to_double(f[8]);
            r.theta_err_refined_rad = to_double(f[9]);
            r.phi_err_refined_rad = to_double(f[10]);
            r.crlb_h1 = to_double(f[11]);
            r.crlb_h2 = to_double(f[12]);
            r.iters_step1 = static_cast<int>(to_integer(f[13]));
            r.iters_step2 = static_cast<int>(to_integer(f[14]));
            r.iters_step3 = static_cast<int>(to_integer(f[15]));
            r.converged_all = to_integer(f[16]) != 0;
            r.ms_total = to_double(f[17]);
            out.push_back(r);
        }
        return out;
    }

    std::string aggregate_csv(std::span<const CellAggregate> cells)
    {
        std::string out = "# schema hris-aggregate v" + std::to_string(csv_schema_version) + "\n" +
                          join(aggregate_columns()) + "\n";
        for (const CellAggregate &c : cells)
        {
            const std::vector<double> v{c.power_dbm, c.eps1,
                                        c.nmse_h1_init.estimate, c.nmse_h1_init.lower, c.nmse_h1_init.upper,
                                        c.nmse_h1_refined.estimate, c.nmse_h1_refined.lower, c.nmse_h1_refined.upper,
                                        c.nmse_h2.estimate, c.nmse_h2.lower, c.nmse_h2.upper,
                                        c.rmse_theta_norefine_rad, c.rmse_phi_norefine_rad,
                                        c.rmse_theta_refined_rad, c.rmse_phi_refined_rad,
                                        c.crlb_h1, c.crlb_h2, c.crlb_h1_norm, c.crlb_h2_norm, c.converged_fraction};
            out += num(v[0]) + "," + num(v[1]) + "," + std::to_string(c.trials);
            for (std::size_t i = 2; i < v.size(); ++i)
                out += "," + num(v[i]);
            out += "," + std::to_string(c.aoa_failures) + "," + std::to_string(c.flagged_trials) + "\n";
        }
        return out;
    }

    std::string manifest_json(const ExperimentConfig &cfg, const SweepResult &result)
    {
        json seeds = json::array();
        for (const TrialOutcome &o : result.outcomes)
            seeds.push_back({{"power_index", o.power_index},
                             {"eps1_index", o.eps_index},
                             {"trial", o.record.trial},
                             {"seed", o.record.seed}});
        json doc;
        doc["schema"] = "hris-manifest";
        doc["schema_version"] = manifest_schema_version;
        doc["csv_schema_version"] = csv_schema_version;
        doc["code_version"] = version();
        doc["seed_derivation"] = "splitmix64 chain over (master_seed, power_index, eps1_index, trial)";
        doc["config"] = json::parse(config_to_json(cfg));
        doc["trial_columns"] = trial_columns();
        doc["aggregate_columns"] = aggregate_columns();
        doc["trials_total"] = result.outcomes.size();
        doc["seeds"] = std::move(seeds);
        return doc.dump(2) + "\n";
    }

    std::string results_json(const SweepResult &result)
    {
        json trials = json::array();
        for (const TrialOutcome &o : result.outcomes)
        {
            const TrialRecord &r = o.record;
            json w = o.warnings;
            trials.push_back({{"trial", r.trial},
                              {"seed", r.seed},
                              {"power_dbm", r.power_dbm},
                              {"eps1", r.eps1},
                              {"nmse_h1_init", finite_or_null(r.nmse_h1_init)},
                              {"nmse_h1_refined", finite_or_null(r.nmse_h1_refined)},
                              {"nmse_h2", finite_or_null(r.nmse_h2)},
                              {"theta_err_norefine_rad", finite_or_null(r.theta_err_norefine_rad)},
                              {"phi_err_norefine_rad", finite_or_null(r.phi_err_norefine_rad)},
                              {"theta_err_refined_rad", finite_or_null(r.theta_err_refined_rad)},
                              {"phi_err_refined_rad", finite_or_null(r.phi_err_refined_rad)},
                              {"crlb_h1", finite_or_null(r.crlb_h1)},
                              {"crlb_h2", finite_or_null(r.crlb_h2)},
                              {"iters_step1", r.iters_step1},
                              {"iters_step2", r.iters_step2},
                              {"iters_step3", r.iters_step3},
                              {"converged_all", r.converged_all},
                              {"ms_total", r.ms_total},
                              {"warnings", std::move(w)}});
        }
        json cells = json::array();
        for (const CellAggregate &c : result.cells)
        {
            auto ci = [](const ConfidenceInterval &x) {
                return json{{"mean", finite_or_null(x.estimate)}, {"lo", finite_or_null(x.lower)}, {"hi", finite_or_null(x.upper)}};
            };
            cells.push_back({{"power_dbm", c.power_dbm},
                             {"eps1", c.eps1},
                             {"trials", c.trials},
                             {"nmse_h1_init", ci(c.nmse_h1_init)},
                             {"nmse_h1_refined", ci(c.nmse_h1_refined)},
                             {"nmse_h2", ci(c.nmse_h2)},
                             {"rmse_theta_norefine_rad", finite_or_null(c.rmse_theta_norefine_rad)},
                             {"rmse_phi_norefine_rad", finite_or_null(c.rmse_phi_norefine_rad)},
                             {"rmse_theta_refined_rad", finite_or_null(c.rmse_theta_refined_rad)},
                             {"rmse_phi_refined_rad", finite_or_null(c.rmse_phi_refined_rad)},
                             {"crlb_h1", finite_or_null(c.crlb_h1)},
                             {"crlb_h2", finite_or_null(c.crlb_h2)},
                             {"crlb_h1_norm", finite_or_null(c.crlb_h1_norm)},
                             {"crlb_h2_norm", finite_or_null(c.crlb_h2_norm)},
                             {"converged_fraction", c.converged_fraction},
                             {"aoa_failures", c.aoa_failures},
                             {"flagged_trials", c.flagged_trials}});
        }
        json doc;
        doc["schema"] = "hris-results";
        doc["schema_version"] = csv_schema_version;
        doc["trials"] = std::move(trials);
        doc["cells"] = std::move(cells);
        return doc.dump(2) + "\n";
    }

    std::string svg_nmse_plot(std::span<const CellAggregate> cells)
    {
        if (cells.empty())
            throw InvalidArgument("svg_nmse_plot: no cells");
        std::vector<double> eps;
        double xmin = cells[0].power_dbm, xmax = xmin, ymin = 1e300, ymax = 0.0;
        const auto grow = [&](double v) {
            if (std::isfinite(v) && v > 0.0)
            {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        };
        for (const CellAggregate &c : cells)
        {
            if (std::find(eps.begin(), eps.end(), c.eps1) == eps.end())
                eps.push_back(c.eps1);
            xmin = std::min(xmin, c.power_dbm);
            xmax = std::max(xmax, c.power_dbm);
            grow(c.nmse_h1_refined.estimate);
            grow(c.nmse_h2.estimate);
            grow(c.crlb_h1_norm);
            grow(c.crlb_h2_norm);
        }
        if (xmax == xmin)
        {
            xmin -= 1.0;
            xmax += 1.0;
        }
        if (!(ymax > 0.0))
        {
            ymin = 0.1;
            ymax = 1.0;
        }
        Canvas cv{xmin, xmax, std::pow(10.0, std::floor(std::log10(ymin))), std::pow(10.0, std::ceil(std::log10(ymax))), true};
        if (cv.y1 <= cv.y0)
            cv.y1 = cv.y0 * 10.0;

        struct Series
        {
            const char *label;
            const char *dash;
            double CellAggregate::*plain;
            ConfidenceInterval CellAggregate::*interval;
        };
        const Series series[] = {{"h1", "", nullptr, &CellAggregate::nmse_h1_refined},
                                 {"H2", "6,3", nullptr, &CellAggregate::nmse_h2},
                                 {"CRLB h1", "2,3", &CellAggregate::crlb_h1_norm, nullptr},
                                 {"CRLB H2", "1,4", &CellAggregate::crlb_h2_norm, nullptr}};
        int legend = 0;
        for (std::size_t e = 0; e < eps.size(); ++e)
        {
            for (const Series &s : series)
            {
                std::vector<std::pair<double, double>> pts;
                for (const CellAggregate &c : cells)
                {
                    if (c.eps1 != eps[e])
                        continue;
                    const double v = s.plain ? c.*(s.plain) : (c.*(s.interval)).estimate;
                    if (std::isfinite(v) && v > 0.0)
                        pts.emplace_back(c.power_dbm, v);
                }
                if (pts.empty())
                    continue;
                std::sort(pts.begin(), pts.end());
                cv.body << "<polyline fill=\"none\" stroke=\"" << palette(e) << "\" stroke-dasharray=\"" << s.dash
                        << "\" points=\"";
                for (const auto &[x, y] : pts)
                    cv.body << cv.px(x) << "," << cv.py(y) << " ";
                cv.body << "\"/>\n";
                const int ly = cv.top + 12 + 16 * legend++;
                cv.body << "<line x1=\"" << cv.w - cv.right + 10 << "\" y1=\"" << ly << "\" x2=\"" << cv.w - cv.right + 34
                        << "\" y2=\"" << ly << "\" stroke=\"" << palette(e) << "\" stroke-dasharray=\"" << s.dash << "\"/>"
                        << "<text x=\"" << cv.w - cv.right + 40 << "\" y=\"" << ly + 4 << "\">" << s.label
                        << " eps1=" << Canvas::num_short(eps[e]) << "</text>\n";
            }
        }
        return cv.finish("NMSE versus transmit power", "P [dBm]", "NMSE");
    }

    std::string svg_aoa_scatter(std::span<const TrialOutcome> outcomes, std::size_t power_index, std::size_t eps_index)
    {
        std::vector<const TrialOutcome *> cell;
        for (const TrialOutcome &o : outcomes)
            if (o.power_index == power_index && o.eps_index == eps_index)
                cell.push_back(&o);
        if (cell.empty())
            throw InvalidArgument("svg_aoa_scatter: empty cell");

        const double deg = 180.0 / pi;
        const Angles truth = cell.front()->los_truth;
        double tmin = truth.theta * deg, tmax = tmin, pmin = truth.phi * deg, pmax = pmin;
        for (const TrialOutcome *o : cell)
            for (const auto *est : {&o->aoa_initial, &o->aoa_refined})
                if (est->has_value())
                {
                    tmin = std::min(tmin, (*est)->theta * deg);
                    tmax = std::max(tmax, (*est)->theta * deg);
                    pmin = std::min(pmin, (*est)->phi * deg);
                    pmax = std::max(pmax, (*est)->phi * deg);
                }
        const double pad_t = std::max(0.5, 0.05 * (tmax - tmin));
        const double pad_p = std::max(0.5, 0.05 * (pmax - pmin));
        Canvas cv{tmin - pad_t, tmax + pad_t, pmin - pad_p, pmax + pad_p, false};

        const char *colors[] = {"#1f77b4", "#d62728"};
        const char *labels[] = {"w/o refinement", "with refinement"};
        for (int k = 0; k < 2; ++k)
        {
            for (const TrialOutcome *o : cell)
            {
                const auto &est = k == 0 ? o->aoa_initial : o->aoa_refined;
                if (est)
                    cv.body << "<circle cx=\"" << cv.px(est->theta * deg) << "\" cy=\"" << cv.py(est->phi * deg)
                            << "\" r=\"3\" fill=\"none\" stroke=\"" << colors[k] << "\"/>\n";
            }
            const int ly = cv.top + 12 + 16 * k;
            cv.body << "<circle cx=\"" << cv.w - cv.right + 20 << "\" cy=\"" << ly << "\" r=\"3\" fill=\"none\" stroke=\""
                    << colors[k] << "\"/><text x=\"" << cv.w - cv.right + 30 << "\" y=\"" << ly + 4 << "\">" << labels[k]
                    << "</text>\n";
        }
        cv.body << "<path d=\"M" << cv.px(truth.theta * deg) - 6 << "," << cv.py(truth.phi * deg) << " h12 M"
                << cv.px(truth.theta * deg) << "," << cv.py(truth.phi * deg) - 6 << " v12\" stroke=\"black\" stroke-width=\"2\"/>\n"
                << "<text x=\"" << cv.w - cv.right + 30 << "\" y=\"" << cv.top + 48 << "\">true LoS</text>\n";
        const TrialRecord &r = cell.front()->record;
        return cv.finish("LoS AoA estimates, P=" + Canvas::num_short(r.power_dbm) + " dBm, eps1=" + Canvas::num_short(r.eps1),
                         "azimuth [deg]", "elevation [deg]");
    }

    void ensure_writable_dir(const std::filesystem::path &dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
        const std::filesystem::path probe = dir / ".hris_write_probe";
        {
            std::ofstream out(probe);
            if (!out || !(out << "probe") || !out.flush())
                throw IoError("output directory " + dir.string() + " is not writable");
        }
        std::filesystem::remove(probe, ec);
    }

    void write_text(const std::filesystem::path &path, std::string_view content)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open " + path.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw IoError("write to " + path.string() + " failed");
    }

    std::vector<std::filesystem::path> emit_results(const ExperimentConfig &cfg, const SweepResult &result,
                                                    const std::filesystem::path &dir, OutputFormat format, bool plots)
    {
        ensure_writable_dir(dir);
        std::vector<std::filesystem::path> written;
        const auto put = [&](const char *name, const std::string &content) {
            write_text(dir / name, content);
            written.push_back(dir / name);
        };

        if (format == OutputFormat::csv)
        {
            std::vector<TrialRecord> records;
            for (const TrialOutcome &o : result.outcomes)
                records.push_back(o.record);
            put("trials.csv", trials_csv(records));
            put("aggregate.csv", aggregate_csv(result.cells));
        }
        else
        {
            put("results.json", results_json(result));
        }
        put("manifest.json", manifest_json(cfg, result));

        if (plots && !result.cells.empty())
        {
            put("nmse.svg", svg_nmse_plot(result.cells));
            // Scatter at the power closest to -10 dBm and the eps1 closest to 0.4
            std::size_t pi_best = 0, ei_best = 0;
            for (std::size_t i = 1; i < cfg.power_sweep_dbm.size(); ++i)
                if (std::abs(cfg.power_sweep_dbm[i] + 10.0) < std::abs(cfg.power_sweep_dbm[pi_best] + 10.0))
                    pi_best = i;
            for (std::size_t i = 1; i < cfg.eps1_sweep.size(); ++i)
                if (std::abs(cfg.eps1_sweep[i] - 0.4) < std::abs(cfg.eps1_sweep[ei_best] - 0.4))
                    ei_best = i;
            put("aoa_scatter.svg", svg_aoa_scatter(result.outcomes, pi_best, ei_best));
        }
        return written;
    }
}
