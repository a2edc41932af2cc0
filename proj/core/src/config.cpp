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

#include "hris/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hris/errors.hpp"

#ifndef HRIS_VERSION
#define HRIS_VERSION "unknown"
#endif

namespace hris
{
    namespace
    {
        using json = nlohmann::json;

        void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
        {
            if (!obj.is_object())
                throw ConfigError(where + ": expected an object");
            const std::set<std::string> keys(allowed.begin(), allowed.end());
            for (const auto &item : obj.items())
                if (!keys.count(item.key()))
                    throw ConfigError(where + ": unknown key '" + item.key() + "'");
        }

        template <typename T>
        void read(const json &obj, const char *key, T &out, const std::string &where)
        {
            if (!obj.contains(key))
                return;
            try
            {
                out = obj.at(key).get<T>();
            }
            catch (const json::exception &e)
            {
                throw ConfigError(where + "." + key + ": " + e.what());
            }
        }

        template <typename T>
        void read_optional(const json &obj, const char *key, std::optional<T> &out, const std::string &where)
        {
            if (!obj.contains(key) || obj.at(key).is_null())
                return;
            T v{};
            read(obj, key, v, where);
            out = v;
        }

        Point3 read_point(const json &obj, const char *key, const Point3 &fallback, const std::string &where)
        {
            if (!obj.contains(key))
                return fallback;
            std::vector<double> v;
            read(obj, key, v, where);
            if (v.size() != 3)
                throw ConfigError(where + "." + key + ": expected three coordinates");
            return {v[0], v[1], v[2]};
        }

        void parse_geometry(const json &g, ExperimentConfig &cfg)
        {
            const std::string where = "geometry";
            reject_unknown(g, {"uav_pos", "hris_pos", "bs_pos", "m_x", "m_y", "n_bs", "d1x", "d1y", "d2z"}, where);
            cfg.scenario.uav_pos = read_point(g, "uav_pos", cfg.scenario.uav_pos, where);
            cfg.scenario.hris_pos = read_point(g, "hris_pos", cfg.scenario.hris_pos, where);
            cfg.scenario.bs_pos = read_point(g, "bs_pos", cfg.scenario.bs_pos, where);
            read(g, "m_x", cfg.m_x, where);
            read(g, "m_y", cfg.m_y, where);
            read(g, "n_bs", cfg.n_bs, where);
            read_optional(g, "d1x", cfg.d1x, where);
            read_optional(g, "d1y", cfg.d1y, where);
            read_optional(g, "d2z", cfg.d2z, where);
        }

        void parse_offsets(const json &o, ExperimentConfig &cfg)
        {
            const std::string where = "nlos_angle_offset";
            if (o.is_number())
            {
                const double v = o.get<double>();
                cfg.nlos_offsets = {v, v, v};
                return;
            }
            reject_unknown(o, {"azimuth", "elevation", "bs_elevation"}, where);
            read(o, "azimuth", cfg.nlos_offsets.azimuth, where);
            read(o, "elevation", cfg.nlos_offsets.elevation, where);
            read(o, "bs_elevation", cfg.nlos_offsets.bs_elevation, where);
        }

        void parse_solver(const json &s, SolverOptions &o)
        {
            const std::string where = "solver";
            reject_unknown(s, {"rel_tol", "abs_tol", "max_iters", "rho", "balance_ratio", "rho_step", "relaxation",
                               "adapt_interval", "reg_scale", "mu_floor", "record_objective"},
                           where);
            read(s, "rel_tol", o.rel_tol, where);
            read(s, "abs_tol", o.abs_tol, where);
            read(s, "max_iters", o.max_iters, where);
            read(s, "rho", o.rho, where);
            read(s, "balance_ratio", o.balance_ratio, where);
            read(s, "rho_step", o.rho_step, where);
            read(s, "relaxation", o.relaxation, where);
            read(s, "adapt_interval", o.adapt_interval, where);
            read(s, "reg_scale", o.reg_scale, where);
            read(s, "mu_floor", o.mu_floor, where);
            read(s, "record_objective", o.record_objective, where);
        }

        void parse_aoa(const json &a, ExperimentConfig &cfg)
        {
            const std::string where = "aoa";
            reject_unknown(a, {"n_paths", "subarray_x", "subarray_y", "residual_threshold", "polish"}, where);
            read(a, "n_paths", cfg.aoa_paths, where);
            read(a, "subarray_x", cfg.aoa.subarray_x, where);
            read(a, "subarray_y", cfg.aoa.subarray_y, where);
            read(a, "residual_threshold", cfg.aoa.residual_threshold, where);
            read(a, "polish", cfg.aoa.polish, where);
        }

        ExperimentConfig parse_config_object(const json &doc)
        {
            ExperimentConfig cfg;
            const std::string where = "config";
            reject_unknown(doc,
                           {"geometry", "fc_ghz", "l1", "l2", "nlos_power_gap_db", "nlos_angle_offset", "k_instants",
                            "trials", "power_sweep_dbm", "eps1_sweep", "sigma2_dbm", "sigma_r2_dbm", "sigma_b2_dbm",
                            "solver", "aoa", "refinement_rounds", "master_seed"},
                           where);
            if (doc.contains("geometry"))
                parse_geometry(doc.at("geometry"), cfg);
            read(doc, "fc_ghz", cfg.fc_ghz, where);
            read(doc, "l1", cfg.l1, where);
            read(doc, "l2", cfg.l2, where);
            read(doc, "nlos_power_gap_db", cfg.nlos_power_gap_db, where);
            if (doc.contains("nlos_angle_offset"))
                parse_offsets(doc.at("nlos_angle_offset"), cfg);
            read(doc, "k_instants", cfg.k_instants, where);
            read(doc, "trials", cfg.trials, where);
            read(doc, "power_sweep_dbm", cfg.power_sweep_dbm, where);
            read(doc, "eps1_sweep", cfg.eps1_sweep, where);
            read(doc, "sigma2_dbm", cfg.sigma2_dbm, where);
            read_optional(doc, "sigma_r2_dbm", cfg.sigma_r2_dbm, where);
            read_optional(doc, "sigma_b2_dbm", cfg.sigma_b2_dbm, where);
            if (doc.contains("solver"))
                parse_solver(doc.at("solver"), cfg.solver);
            if (doc.contains("aoa"))
                parse_aoa(doc.at("aoa"), cfg);
            read(doc, "refinement_rounds", cfg.refinement_rounds, where);
            read(doc, "master_seed", cfg.master_seed, where);
            cfg.validate();
            return cfg;
        }

        json optional_json(const std::optional<double> &v)
        {
            return v ? json(*v) : json(nullptr);
        }

        void require(bool ok, const std::string &msg)
        {
            if (!ok)
                throw ConfigError(msg);
        }
    }

    void ExperimentConfig::validate() const
    {
        require(m_x >= 1 && m_y >= 1 && n_bs >= 1, "array sizes must be >= 1");
        require(fc_ghz > 0.0 && std::isfinite(fc_ghz), "fc_ghz must be positive");
        for (const auto &d : {d1x, d1y, d2z})
            require(!d || (*d > 0.0 && std::isfinite(*d)), "element spacings must be positive");
        require(l1 >= 1 && l2 >= 1, "l1 and l2 must be >= 1");
        require(std::isfinite(nlos_power_gap_db), "nlos_power_gap_db must be finite");
        require(k_instants >= 1 && k_instants <= m_x * m_y, "k_instants must lie in [1, M]");
        require(trials >= 1, "trials must be >= 1");
        require(!power_sweep_dbm.empty(), "power_sweep_dbm must not be empty");
        require(!eps1_sweep.empty(), "eps1_sweep must not be empty");
        for (double p : power_sweep_dbm)
            require(std::isfinite(p), "power_sweep_dbm entries must be finite");
        for (double e : eps1_sweep)
            require(e >= 0.0 && e <= 1.0, "eps1_sweep entries must lie in [0, 1]");
        require(std::isfinite(sigma2_dbm), "sigma2_dbm must be finite");
        require(refinement_rounds >= 0, "refinement_rounds must be >= 0");
        require(aoa_paths >= 0, "aoa.n_paths must be >= 0");
        require(solver.rel_tol > 0.0 && solver.abs_tol >= 0.0, "solver tolerances must be positive");
        require(solver.max_iters >= 1, "solver.max_iters must be >= 1");
        require(solver.rho > 0.0 && solver.rho_step >= 1.0 && solver.balance_ratio >= 1.0, "invalid solver penalty settings");
        require(solver.relaxation > 0.0 && solver.relaxation < 2.0, "solver.relaxation must lie in (0, 2)");
        require(solver.adapt_interval >= 1, "solver.adapt_interval must be >= 1");
        require(solver.reg_scale > 0.0 && solver.mu_floor >= 0.0, "solver regularizer settings must be positive");
        try
        {
            scenario.validate();
            array().validate();
        }
        catch (const Error &e)
        {
            throw ConfigError(e.what());
        }
    }

    ArrayGeometry ExperimentConfig::array() const
    {
        ArrayGeometry g = ArrayGeometry::half_wavelength(m_x, m_y, n_bs, wavelength_from_ghz(fc_ghz));
        if (d1x)
            g.d1x = *d1x;
        if (d1y)
            g.d1y = *d1y;
        if (d2z)
            g.d2z = *d2z;
        return g;
    }

    ChannelDrawOptions ExperimentConfig::channel_options() const
    {
        ChannelDrawOptions o;
        o.fc_ghz = fc_ghz;
        o.l1 = l1;
        o.l2 = l2;
        o.nlos_power_gap_db = nlos_power_gap_db;
        o.nlos_offsets = nlos_offsets;
        return o;
    }

    EstimatorOptions ExperimentConfig::estimator_options() const
    {
        EstimatorOptions o;
        o.solver = solver;
        o.refinement_rounds = refinement_rounds;
        o.n_paths = aoa_paths > 0 ? aoa_paths : l1;
        o.aoa = aoa;
        return o;
    }

    double ExperimentConfig::sigma_r2_mw() const
    {
        return dbm_to_mw(sigma_r2_dbm.value_or(sigma2_dbm));
    }

    double ExperimentConfig::sigma_b2_mw() const
    {
        return dbm_to_mw(sigma_b2_dbm.value_or(sigma2_dbm));
    }

    ExperimentConfig parse_config(std::string_view json_text)
    {
        json doc;
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("malformed JSON: ") + e.what());
        }
        if (doc.is_object() && doc.value("schema", std::string()) == "hris-manifest")
        {
            const int v = doc.value("schema_version", 0);
            if (v != manifest_schema_version)
                throw ConfigError("unsupported manifest schema version " + std::to_string(v));
            if (!doc.contains("config"))
                throw ConfigError("manifest has no config section");
            return parse_config_object(doc.at("config"));
        }
        return parse_config_object(doc);
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    void apply_profile(ExperimentConfig &cfg, std::string_view profile)
    {
        if (profile == "paper")
            return;
        if (profile == "desk")
        {
            cfg.trials = 50;
            cfg.power_sweep_dbm = {-20.0, -10.0, 0.0};
            return;
        }
        throw ConfigError("unknown profile '" + std::string(profile) + "' (expected desk or paper)");
    }

    std::string config_to_json(const ExperimentConfig &cfg, int indent)
    {
        const auto point = [](const Point3 &p) { return json::array({p.x(), p.y(), p.z()}); };
        json doc;
        doc["geometry"] = {{"uav_pos", point(cfg.scenario.uav_pos)},
                           {"hris_pos", point(cfg.scenario.hris_pos)},
                           {"bs_pos", point(cfg.scenario.bs_pos)},
                           {"m_x", cfg.m_x},
                           {"m_y", cfg.m_y},
                           {"n_bs", cfg.n_bs},
                           {"d1x", optional_json(cfg.d1x)},
                           {"d1y", optional_json(cfg.d1y)},
                           {"d2z", optional_json(cfg.d2z)}};
        doc["fc_ghz"] = cfg.fc_ghz;
        doc["l1"] = cfg.l1;
        doc["l2"] = cfg.l2;
        doc["nlos_power_gap_db"] = cfg.nlos_power_gap_db;
        doc["nlos_angle_offset"] = {{"azimuth", cfg.nlos_offsets.azimuth},
                                    {"elevation", cfg.nlos_offsets.elevation},
                                    {"bs_elevation", cfg.nlos_offsets.bs_elevation}};
        doc["k_instants"] = cfg.k_instants;
        doc["trials"] = cfg.trials;
        doc["power_sweep_dbm"] = cfg.power_sweep_dbm;
        doc["eps1_sweep"] = cfg.eps1_sweep;
        doc["sigma2_dbm"] = cfg.sigma2_dbm;
        doc["sigma_r2_dbm"] = optional_json(cfg.sigma_r2_dbm);
        doc["sigma_b2_dbm"] = optional_json(cfg.sigma_b2_dbm);
        const SolverOptions &s = cfg.solver;
        doc["solver"] = {{"rel_tol", s.rel_tol},
                         {"abs_tol", s.abs_tol},
                         {"max_iters", s.max_iters},
                         {"rho", s.rho},
                         {"balance_ratio", s.balance_ratio},
                         {"rho_step", s.rho_step},
                         {"relaxation", s.relaxation},
                         {"adapt_interval", s.adapt_interval},
                         {"reg_scale", s.reg_scale},
                         {"mu_floor", s.mu_floor},
                         {"record_objective", s.record_objective}};
        doc["aoa"] = {{"n_paths", cfg.aoa_paths},
                      {"subarray_x", cfg.aoa.subarray_x},
                      {"subarray_y", cfg.aoa.subarray_y},
                      {"residual_threshold", cfg.aoa.residual_threshold},
                      {"polish", cfg.aoa.polish}};
        doc["refinement_rounds"] = cfg.refinement_rounds;
        doc["master_seed"] = cfg.master_seed;
        return doc.dump(indent);
    }

    std::string version()
    {
        return HRIS_VERSION;
    }
}
