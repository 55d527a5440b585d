// SPDX-License-Identifier: Apache-2.0
//
// chansim: stochastic electromagnetic channel simulator for holographic MIMO
// Copyright (C) 2026 The chansim authors
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

#include "chansim/experiments.hpp"
#include "chansim/capacity.hpp"
#include "chansim/channel.hpp"
#include "chansim/errors.hpp"
#include "chansim/moments.hpp"
#include "chansim/output.hpp"
#include "chansim/regions.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

namespace chansim
{
    const std::vector<ExperimentInfo> &experiment_list()
    {
        static const std::vector<ExperimentInfo> list = {
            {"correlation", "spatial correlation vs element spacing: proposed, Rician and Clarke"},
            {"eigenvalues", "leading eigenvalue of each polarization block vs distance"},
            {"capacity-coupling", "SP/DP/TP capacity with and without mutual coupling, plus i.i.d. Rayleigh"},
            {"multipath-vs-los", "SP/DP/TP capacity of the multipath and line-of-sight channels"},
            {"theory-bounds", "Monte Carlo MISO capacity against the closed-form bounds"},
            {"capacity-region", "two-user regions, practical and theoretical, for NF-NF, NF-FF and FF-FF"},
            {"region-kfactor", "two-user regions of the proposed and Rician channels for several K"},
            {"moments-oracle", "closed-form moments against the plane-wave oracle"},
        };
        return list;
    }

    bool is_experiment(const std::string &name)
    {
        for (const auto &e : experiment_list())
            if (name == e.name)
                return true;
        return false;
    }

    namespace
    {
        namespace fs = std::filesystem;
        constexpr double inf = std::numeric_limits<double>::infinity();

        std::string num(double v) { return format_number(v); }

        // Short form for file names and column labels.
        std::string tag(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            return buf;
        }

        std::string k_label(double K) { return std::isinf(K) ? "Kinf" : "K" + tag(K); }

        struct Run
        {
            std::string name;
            const Config &c;
            std::string dir;
            CavityEnvironment env;
            double lambda;
            std::uint64_t seed;
            double sigma2;
            SamplerOptions sampler;
            std::vector<std::string> files;

            Run(std::string n, const Config &cfg, std::string out)
                : name(std::move(n)), c(cfg), dir(std::move(out)), env(environment_from(cfg)),
                  lambda(env.wavelength), seed(cfg.count("simulation.seed")),
                  sigma2(cfg.number("simulation.sigma2"))
            {
                if (!(sigma2 > 0.0))
                    throw ParseError("config key 'simulation.sigma2' must be positive",
                                     cfg.entry("simulation.sigma2").line, "simulation.sigma2");
                sampler.K = cfg.kfactor("simulation.kfactor");
                sampler.n_waves = cfg.count("simulation.n_waves");
                const auto &mode = cfg.text("simulation.channel_mode");
                if (mode == "real")
                    sampler.mode = ChannelMode::real;
                else if (mode == "complex")
                    sampler.mode = ChannelMode::complex_envelope;
                else
                    throw ParseError("config key 'simulation.channel_mode': expected real or complex",
                                     cfg.entry("simulation.channel_mode").line, "simulation.channel_mode");
                const auto &s = cfg.text("simulation.sampling");
                if (s == "independent")
                    sampler.sampling = SamplingMode::independent;
                else if (s == "common")
                    sampler.sampling = SamplingMode::common_field;
                else
                    throw ParseError("config key 'simulation.sampling': expected independent or common",
                                     cfg.entry("simulation.sampling").line, "simulation.sampling");
            }

            CsvTable table(const std::vector<std::string> &columns) const
            {
                CsvTable t;
                t.add_header("experiment", name);
                t.add_header("seed", std::to_string(seed));
                t.add_header("sigma2", num(sigma2));
                t.add_header("frequency_hz", num(env.frequency));
                t.add_header("volume_lambda3", num(env.volume / (lambda * lambda * lambda)));
                t.add_header("quality_factor", num(env.quality));
                t.add_header("field_scale", num(env.field_scale));
                t.add_header("channel_mode", to_string(sampler.mode));
                t.columns = columns;
                return t;
            }

            void write(const CsvTable &t, const std::string &file)
            {
                write_csv(t, (fs::path(dir) / file).string());
                files.push_back(file);
            }

            ArrayGeometry array(const char *section) const
            {
                auto a = array_from(c, section, lambda);
                scatterer_check(a, section);
                return a;
            }

            // Linear transmit array along x used by the single-receiver experiments.
            ArrayGeometry linear_tx() const
            {
                const auto n = c.count("simulation.bound_elements");
                const double d = c.length("simulation.bound_spacing", lambda);
                auto a = build_linear_array(n, d, Vec3::UnitX());
                scatterer_check(a, "linear tx");
                return a;
            }

            // A strict-mode rejection is a configuration error, not a run-time one.
            void scatterer_check(const ArrayGeometry &a, const std::string &label) const
            {
                try
                {
                    check_min_scatterer(a, lambda, c.flag("simulation.strict_min_scatterer"), label.c_str());
                }
                catch (const DomainError &e)
                {
                    throw ParseError(e.what(), c.entry("simulation.strict_min_scatterer").line,
                                     "simulation.strict_min_scatterer");
                }
            }

            std::size_t trials(const char *key) const
            {
                const auto n = c.count(key);
                if (n == 0)
                    throw ParseError(std::string("config key '") + key + "' must be positive", c.entry(key).line, key);
                return n;
            }
        };

        ArrayGeometry single_rx(double R)
        {
            ArrayGeometry rx;
            rx.positions = {Vec3(0, 0, R)};
            return rx;
        }

        ArrayGeometry shifted(const ArrayGeometry &a, const Vec3 &by)
        {
            auto b = a;
            for (auto &p : b.positions)
                p += by;
            return b;
        }

        // Mean xx entry power over all pairs, used to scale the classical baselines.
        double mean_entry_power(const ArrayGeometry &tx, const ArrayGeometry &rx, const CavityEnvironment &env)
        {
            const auto pairs = pairwise_geometry(tx, rx);
            double p = 0.0;
            for (std::size_t m = 0; m < pairs.n_rx(); ++m)
                for (std::size_t n = 0; n < pairs.n_tx(); ++n)
                {
                    const auto cm = channel_moment_params(pairs(m, n), env);
                    const double mu = cm.mean_los[0][0] + cm.mean_nlos[0][0];
                    p += mu * mu + cm.variance[0][0];
                }
            return p / double(pairs.n_rx() * pairs.n_tx());
        }

        const std::vector<PolarizationSet> all_sets = {PolarizationSet::SP, PolarizationSet::DP, PolarizationSet::TP};

        void correlation(Run &r)
        {
            const auto spacings = r.c.numbers("simulation.corr_spacings");
            const double K = r.c.number("simulation.corr_kfactor");
            CorrelationOptions opt;
            opt.n_reference = r.c.count("simulation.corr_reference");
            opt.reference_spacing_over_lambda = r.c.number("simulation.bound_spacing") *
                                                (r.c.text("simulation.unit") == "m" ? 1.0 / r.lambda : 1.0);
            opt.n_trials = r.trials("simulation.corr_trials");
            opt.n_waves = r.c.count("simulation.n_waves");
            opt.seed = r.seed;
            std::vector<double> s(spacings);
            if (r.c.text("simulation.unit") == "m")
                for (auto &v : s)
                    v /= r.lambda;
            for (double h : r.c.lengths("simulation.corr_d_rt", r.lambda))
            {
                opt.d_rt_over_lambda = h / r.lambda;
                opt.K = K;
                const auto pk = correlation_vs_spacing(CorrelationModel::proposed, s, r.env, opt);
                opt.K = inf;
                const auto pinf = correlation_vs_spacing(CorrelationModel::proposed, s, r.env, opt);
                opt.K = K;
                const auto ric = correlation_vs_spacing(CorrelationModel::rician, s, r.env, opt);
                const auto cl = correlation_vs_spacing(CorrelationModel::clarke, s, r.env, opt);
                auto t = r.table({"spacing_lambda", "rho_proposed_" + k_label(K), "rho_proposed_Kinf",
                                  "rho_rician_" + k_label(K), "rho_clarke"});
                t.add_header("d_rt_lambda", num(opt.d_rt_over_lambda));
                t.add_header("reference_elements", std::to_string(opt.n_reference));
                t.add_header("trials", std::to_string(opt.n_trials));
                t.add_header("n_waves", std::to_string(opt.n_waves));
                t.add_header("sampling", "common_field");
                t.add_header("units", "spacing in wavelengths; rho dimensionless");
                for (std::size_t i = 0; i < s.size(); ++i)
                    t.add_row({num(s[i]), num(pk[i]), num(pinf[i]), num(ric[i]), num(cl[i])});
                r.write(t, "correlation_drt" + tag(opt.d_rt_over_lambda) + ".csv");
            }
        }

        void eigenvalues(Run &r)
        {
            const auto tx = r.array("tx_array");
            const auto rx = r.array("rx_array");
            const auto d = r.c.lengths("simulation.eig_distances", r.lambda);
            EigenvalueOptions opt;
            opt.n_trials = r.c.count("simulation.eig_trials");
            opt.n_batches = r.c.count("simulation.eig_batches");
            opt.seed = r.seed;
            opt.mode = r.sampler.mode;
            const double Kmp = r.c.number("simulation.eig_kfactor");
            for (double K : {Kmp, inf})
            {
                opt.K = K;
                const auto e = polarization_eigenvalues(tx, rx, r.env, d, opt);
                std::vector<std::string> cols = {"distance_lambda"};
                for (int b = 0; b < 9; ++b)
                {
                    cols.push_back(polarization_label(b / 3, b % 3));
                    cols.push_back(polarization_label(b / 3, b % 3) + "_se");
                }
                auto t = r.table(cols);
                t.add_header("kfactor", std::isinf(K) ? "inf" : num(K));
                t.add_header("tx_elements", std::to_string(tx.size()));
                t.add_header("rx_elements", std::to_string(rx.size()));
                t.add_header("trials", std::to_string(opt.n_trials));
                t.add_header("batches", std::to_string(opt.n_batches));
                t.add_header("units", "distance in wavelengths; eigenvalues in field units squared; se is the batch-means standard error");
                for (std::size_t i = 0; i < d.size(); ++i)
                {
                    std::vector<std::string> row = {num(d[i] / r.lambda)};
                    for (int b = 0; b < 9; ++b)
                    {
                        row.push_back(num(e.value[b][i]));
                        row.push_back(num(e.std_error[b][i]));
                    }
                    t.add_row(row);
                }
                r.write(t, std::string("eigenvalues_") + k_label(K) + ".csv");
            }
        }

        ComplexMatrix impedance(const Run &r, const char *section, const ArrayGeometry &a)
        {
            const std::string key = std::string(section) + ".impedance";
            if (!r.c.has(key))
                return synthetic_impedance(a, r.lambda);
            const auto path = r.c.path(key);
            if (!fs::exists(path))
                throw ParseError("config key '" + key + "': file '" + path + "' does not exist", r.c.entry(key).line, key);
            auto Z = load_impedance(path);
            if (std::size_t(Z.rows()) != a.size())
                throw ShapeError(key + ": " + std::to_string(Z.rows()) + "x" + std::to_string(Z.cols()) +
                                 " matrix for " + std::to_string(a.size()) + " elements");
            return Z;
        }

        void capacity_coupling(Run &r)
        {
            const auto tx = r.array("tx_array");
            const auto rx = r.array("rx_array");
            const auto Cs = coupling_matrix(impedance(r, "tx_array", tx), CouplingSide::transmitter).C;
            const auto Cr = coupling_matrix(impedance(r, "rx_array", rx), CouplingSide::receiver).C;
            const auto d = r.c.lengths("simulation.distances", r.lambda);
            MonteCarloOptions mc;
            mc.n_trials = r.trials("simulation.n_trials");
            mc.seed = r.seed;
            std::vector<std::string> cols = {"distance_lambda"};
            for (const char *tag : {"", "_coupled"})
                for (auto s : all_sets)
                {
                    cols.push_back(std::string(to_string(s)) + tag);
                    cols.push_back(std::string(to_string(s)) + tag + "_hw95");
                }
            cols.push_back("SP_rayleigh");
            cols.push_back("SP_rayleigh_hw95");
            auto t = r.table(cols);
            t.add_header("kfactor", r.sampler.K ? num(*r.sampler.K) : "none");
            t.add_header("sampling", to_string(r.sampler.sampling));
            t.add_header("tx_elements", std::to_string(tx.size()));
            t.add_header("rx_elements", std::to_string(rx.size()));
            t.add_header("tx_impedance", r.c.has("tx_array.impedance") ? r.c.text("tx_array.impedance") : "synthetic");
            t.add_header("rx_impedance", r.c.has("rx_array.impedance") ? r.c.text("rx_array.impedance") : "synthetic");
            t.add_header("trials", std::to_string(mc.n_trials));
            t.add_header("rayleigh_entry_power", "mean xx entry power of the proposed channel at each distance");
            t.add_header("units", "distance in wavelengths; capacity in bits per channel use; hw95 is the 95% half-width");
            for (std::size_t i = 0; i < d.size(); ++i)
            {
                const auto rxd = shifted(rx, d[i] * tx.normal);
                const ChannelSampler sampler(tx, rxd, r.env, r.sampler);
                mc.stream_base = std::uint64_t(i) << 32;
                const ChannelSource plain = [&](RandomStream &s) { return sampler.sample(s); };
                const ChannelSource coupled = [&](RandomStream &s) { return apply_coupling(sampler.sample(s), Cr, Cs); };
                std::vector<std::string> row = {num(d[i] / r.lambda)};
                for (const auto *src : {&plain, &coupled})
                {
                    const auto samples = mc_capacity_samples(*src, r.sigma2, all_sets, mc);
                    for (const auto &v : samples)
                    {
                        const auto e = summarize_capacity(v, r.sigma2);
                        row.push_back(num(e.mean_bits));
                        row.push_back(num(e.half_width_95));
                    }
                }
                const double p = mean_entry_power(tx, rxd, r.env);
                const ChannelSource ray = [&](RandomStream &s) { return baseline_iid_rayleigh(tx, rxd, s, p); };
                const auto e = mc_capacity(ray, r.sigma2, PolarizationSet::SP, mc);
                row.push_back(num(e.mean_bits));
                row.push_back(num(e.half_width_95));
                t.add_row(row);
            }
            r.write(t, "capacity_coupling.csv");
        }

        void multipath_vs_los(Run &r)
        {
            const auto tx = r.linear_tx();
            const auto d = r.c.lengths("simulation.los_distances", r.lambda);
            MonteCarloOptions mc;
            mc.n_trials = r.trials("simulation.n_trials");
            mc.seed = r.seed;
            std::vector<std::string> cols = {"distance_lambda"};
            for (const char *tag : {"_multipath", "_los"})
                for (auto s : all_sets)
                {
                    cols.push_back(std::string(to_string(s)) + tag);
                    cols.push_back(std::string(to_string(s)) + tag + "_hw95");
                }
            auto t = r.table(cols);
            t.add_header("kfactor", r.sampler.K ? num(*r.sampler.K) : "none");
            t.add_header("los", "kfactor inf");
            t.add_header("tx_elements", std::to_string(tx.size()));
            t.add_header("rx_elements", "1");
            t.add_header("trials", std::to_string(mc.n_trials));
            t.add_header("units", "distance in wavelengths; capacity in bits per channel use; hw95 is the 95% half-width");
            auto los_opt = r.sampler;
            los_opt.K = inf;
            for (std::size_t i = 0; i < d.size(); ++i)
            {
                const auto rx = single_rx(d[i]);
                mc.stream_base = std::uint64_t(i) << 32;
                std::vector<std::string> row = {num(d[i] / r.lambda)};
                for (const auto *o : {&r.sampler, &los_opt})
                {
                    const ChannelSampler sampler(tx, rx, r.env, *o);
                    const ChannelSource src = [&](RandomStream &s) { return sampler.sample(s); };
                    for (const auto &v : mc_capacity_samples(src, r.sigma2, all_sets, mc))
                    {
                        const auto e = summarize_capacity(v, r.sigma2);
                        row.push_back(num(e.mean_bits));
                        row.push_back(num(e.half_width_95));
                    }
                }
                t.add_row(row);
            }
            r.write(t, "multipath_vs_los.csv");
        }

        void theory_bounds(Run &r)
        {
            const auto tx = r.linear_tx();
            const MisoGeometry g{tx.size(), tx.spacing};
            const auto d = r.c.lengths("simulation.bound_distances", r.lambda);
            MonteCarloOptions mc;
            mc.n_trials = r.trials("simulation.n_trials");
            mc.seed = r.seed;
            auto t = r.table({"distance_lambda", "mc_bits", "mc_hw95", "lower_bound", "upper_bound",
                              "jensen_mean_log", "jensen_log_mean"});
            t.add_header("kfactor", r.sampler.K ? num(*r.sampler.K) : "none");
            t.add_header("tx_elements", std::to_string(g.n_elements));
            t.add_header("rx_elements", "1");
            t.add_header("trials", std::to_string(mc.n_trials));
            t.add_header("units", "distance in wavelengths; capacity in bits per channel use");
            for (std::size_t i = 0; i < d.size(); ++i)
            {
                const ChannelSampler sampler(tx, single_rx(d[i]), r.env, r.sampler);
                const ChannelSource src = [&](RandomStream &s) { return sampler.sample(s); };
                mc.stream_base = std::uint64_t(i) << 32;
                const auto c = mc_capacity_samples(src, r.sigma2, {PolarizationSet::SP}, mc).front();
                const auto e = summarize_capacity(c, r.sigma2);
                std::vector<double> snr(c.size());
                for (std::size_t k = 0; k < c.size(); ++k)
                    snr[k] = std::exp2(c[k]) - 1.0;
                const auto j = jensen_pair(snr);
                t.add_row({num(d[i] / r.lambda), num(e.mean_bits), num(e.half_width_95),
                           num(miso_lower_bound(d[i], g, r.env, r.sigma2)),
                           num(miso_upper_bound(d[i], g.n_elements, r.env, r.sigma2)), num(j.mean_log),
                           num(j.log_mean)});
            }
            r.write(t, "theory_bounds.csv");
        }

        struct Placement
        {
            RegionCase c;
            double R1, R2;
        };

        std::vector<Placement> placements(const Run &r)
        {
            std::vector<Placement> out;
            for (auto [c, key] : {std::pair{RegionCase::NF_NF, "simulation.region_nf_nf"},
                                  std::pair{RegionCase::NF_FF, "simulation.region_nf_ff"},
                                  std::pair{RegionCase::FF_FF, "simulation.region_ff_ff"}})
            {
                const auto v = r.c.lengths(key, r.lambda);
                if (v.size() != 2)
                    throw ParseError(std::string("config key '") + key + "': expected two distances",
                                     r.c.entry(key).line, key);
                out.push_back({c, v[0], v[1]});
            }
            return out;
        }

        void add_region(CsvTable &points, CsvTable &corners, const std::string &label, const std::string &model,
                        const RegionBoundary &b)
        {
            for (std::size_t i = 0; i < b.points.size(); ++i)
                points.add_row({label, model, std::to_string(i), num(b.points[i].r1), num(b.points[i].r2)});
            corners.add_row({label, model, num(b.corner_A.r1), num(b.corner_A.r2), num(b.corner_B.r1),
                             num(b.corner_B.r2), num(b.sum_rate), num(b.identity_residual),
                             region_is_convex(b) ? "1" : "0"});
        }

        const std::vector<std::string> point_cols = {"case", "model", "index", "r1_bits", "r2_bits"};
        const std::vector<std::string> corner_cols = {"case", "model", "A_r1", "A_r2", "B_r1", "B_r2",
                                                      "sum_rate", "identity_residual", "convex"};

        void capacity_region(Run &r)
        {
            const auto tx = r.linear_tx();
            const MisoGeometry g{tx.size(), tx.spacing};
            const auto n = r.trials("simulation.region_trials");
            const auto ts = r.c.count("simulation.region_timeshare");
            auto pts = r.table(point_cols);
            auto cor = r.table(corner_cols);
            for (auto *t : {&pts, &cor})
            {
                t->add_header("kfactor", r.sampler.K ? num(*r.sampler.K) : "none");
                t->add_header("tx_elements", std::to_string(g.n_elements));
                t->add_header("trials", std::to_string(n));
                t->add_header("timeshare_points", std::to_string(ts));
                t->add_header("units", "rates in bits per channel use");
            }
            for (const auto &p : placements(r))
            {
                std::ostringstream label;
                label << to_string(p.c) << "_" << tag(p.R1 / r.lambda) << "_" << tag(p.R2 / r.lambda);
                const ChannelSampler s1(tx, single_rx(p.R1), r.env, r.sampler);
                const ChannelSampler s2(tx, single_rx(p.R2), r.env, r.sampler);
                const auto prac = two_user_region_practical([&](RandomStream &s) { return s1.sample(s); },
                                                            [&](RandomStream &s) { return s2.sample(s); },
                                                            r.sigma2, n, ts, r.seed);
                add_region(pts, cor, label.str(), "practical", prac);
                add_region(pts, cor, label.str(), "theory",
                           two_user_region_theoretical(p.c, p.R1, p.R2, g, r.env, r.sigma2, ts));
            }
            r.write(pts, "capacity_region.csv");
            r.write(cor, "capacity_region_corners.csv");
        }

        void region_kfactor(Run &r)
        {
            const auto tx = r.linear_tx();
            const auto n = r.trials("simulation.region_trials");
            const auto ts = r.c.count("simulation.region_timeshare");
            const auto Ks = r.c.numbers("simulation.region_kfactors");
            auto pts = r.table(point_cols);
            auto cor = r.table(corner_cols);
            for (auto *t : {&pts, &cor})
            {
                t->add_header("tx_elements", std::to_string(tx.size()));
                t->add_header("trials", std::to_string(n));
                t->add_header("timeshare_points", std::to_string(ts));
                t->add_header("rician_entry_power", "mean xx entry power of the proposed channel for that user");
                t->add_header("units", "rates in bits per channel use");
            }
            for (const auto &p : placements(r))
            {
                std::ostringstream label;
                label << to_string(p.c) << "_" << tag(p.R1 / r.lambda) << "_" << tag(p.R2 / r.lambda);
                const auto rx1 = single_rx(p.R1), rx2 = single_rx(p.R2);
                auto run_model = [&](const std::string &model, std::optional<double> K)
                {
                    auto o = r.sampler;
                    o.K = K;
                    const ChannelSampler s1(tx, rx1, r.env, o), s2(tx, rx2, r.env, o);
                    add_region(pts, cor, label.str(), model,
                               two_user_region_practical([&](RandomStream &s) { return s1.sample(s); },
                                                         [&](RandomStream &s) { return s2.sample(s); }, r.sigma2, n,
                                                         ts, r.seed));
                };
                run_model("proposed", std::nullopt);
                for (double K : Ks)
                    run_model("proposed_" + k_label(K), K);
                run_model("los", inf);
                const double p1 = mean_entry_power(tx, rx1, r.env), p2 = mean_entry_power(tx, rx2, r.env);
                for (double K : Ks)
                {
                    if (std::isinf(K))
                        continue;
                    add_region(pts, cor, label.str(), "rician_" + k_label(K),
                               two_user_region_practical(
                                   [&](RandomStream &s) { return baseline_rician(tx, rx1, K, r.lambda, s, p1); },
                                   [&](RandomStream &s) { return baseline_rician(tx, rx2, K, r.lambda, s, p2); },
                                   r.sigma2, n, ts, r.seed));
                }
            }
            r.write(pts, "region_kfactor.csv");
            r.write(cor, "region_kfactor_corners.csv");
        }

        void moments_oracle(Run &r)
        {
            OracleOptions opt;
            opt.n_waves = r.c.count("simulation.oracle_waves");
            opt.n_trials = r.trials("simulation.oracle_trials");
            opt.seed = r.seed;
            const auto &mode = r.c.text("simulation.oracle_mode");
            if (mode == "ensemble")
                opt.mode = OracleMode::ensemble;
            else if (mode == "single_wave")
                opt.mode = OracleMode::single_wave;
            else
                throw ParseError("config key 'simulation.oracle_mode': expected ensemble or single_wave",
                                 r.c.entry("simulation.oracle_mode").line, "simulation.oracle_mode");
            const auto kr = r.c.numbers("simulation.oracle_kr");
            const auto est = planewave_oracle(kr, r.env.volume, opt);
            auto t = r.table({"kR", "component", "statistic", "closed_form", "empirical", "standard_error", "z_score"});
            t.add_header("oracle_mode", mode);
            t.add_header("n_waves", std::to_string(opt.n_waves));
            t.add_header("trials", std::to_string(opt.n_trials));
            t.add_header("units", "moments of the incoherent kernel D_pq in 1/m^3 (mean) and 1/m^6 (variance)");
            for (std::size_t i = 0; i < kr.size(); ++i)
            {
                const auto ms = moment_set(kr[i], r.env.volume);
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        for (int stat = 0; stat < 2; ++stat)
                        {
                            const double cf = stat ? ms.variance[p][q] : ms.mean[p][q];
                            const double em = stat ? est[i].variance[p][q] : est[i].mean[p][q];
                            const double se = stat ? est[i].variance_se[p][q] : est[i].mean_se[p][q];
                            const double z = se > 0 ? (em - cf) / se : (em == cf ? 0.0 : inf);
                            t.add_row({num(kr[i]), polarization_label(p, q), stat ? "variance" : "mean", num(cf),
                                       num(em), num(se), num(z)});
                        }
            }
            r.write(t, "moments_oracle.csv");
        }
    }

    std::vector<std::string> run_experiment(const std::string &name, const Config &config,
                                            const std::string &output_dir)
    {
        if (!is_experiment(name))
            throw ContractError("unknown experiment '" + name + "'");
        Run r(name, config, output_dir);
        ensure_writable_dir(output_dir);
        if (name == "correlation")
            correlation(r);
        else if (name == "eigenvalues")
            eigenvalues(r);
        else if (name == "capacity-coupling")
            capacity_coupling(r);
        else if (name == "multipath-vs-los")
            multipath_vs_los(r);
        else if (name == "theory-bounds")
            theory_bounds(r);
        else if (name == "capacity-region")
            capacity_region(r);
        else if (name == "region-kfactor")
            region_kfactor(r);
        else
            moments_oracle(r);

        std::vector<std::pair<std::string, std::string>> params;
        for (const auto &[k, e] : config.entries())
            params.emplace_back(k, e.value);
        write_manifest(output_dir, name, r.seed, params, r.files);
        return r.files;
    }

    std::vector<std::string> run_experiment(const ExperimentSpec &spec)
    {
        if (!is_experiment(spec.name))
            throw ContractError("unknown experiment '" + spec.name + "'");
        Config c;
        if (!spec.config_path.empty())
            c.load_file(spec.config_path);
        for (const auto &o : spec.overrides)
            c.set(o);
        if (spec.seed)
            c.set("simulation.seed=" + std::to_string(*spec.seed));
        ensure_writable_dir(spec.output_dir);
        return run_experiment(spec.name, c, spec.output_dir);
    }
}
