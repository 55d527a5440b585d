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

#include "chansim/channel.hpp"
#include "chansim/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <vector>
#include <sstream>

namespace chansim
{
    BlockMask block_mask(PolarizationSet set)
    {
        BlockMask m{};
        const int n = set == PolarizationSet::SP ? 1 : set == PolarizationSet::DP ? 2 : 3;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                m[p][q] = true;
        return m;
    }

    const char *to_string(PolarizationSet set)
    {
        switch (set)
        {
        case PolarizationSet::SP: return "SP";
        case PolarizationSet::DP: return "DP";
        default: return "TP";
        }
    }

    const char *to_string(ChannelMode mode)
    {
        return mode == ChannelMode::real ? "real" : "complex";
    }

    const char *to_string(SamplingMode mode)
    {
        return mode == SamplingMode::independent ? "independent" : "common-field";
    }

    std::string polarization_label(int p, int q)
    {
        static const char axis[] = {'x', 'y', 'z'};
        return {axis[p], axis[q]};
    }

    Eigen::Index ChannelRealization::n_rx() const
    {
        for (const auto &row : blocks)
            for (const auto &b : row)
                if (b.size() > 0)
                    return b.rows();
        return 0;
    }

    Eigen::Index ChannelRealization::n_tx() const
    {
        for (const auto &row : blocks)
            for (const auto &b : row)
                if (b.size() > 0)
                    return b.cols();
        return 0;
    }

    ComplexMatrix stacked_channel(const ChannelRealization &h, PolarizationSet set)
    {
        const int n = set == PolarizationSet::SP ? 1 : set == PolarizationSet::DP ? 2 : 3;
        const Eigen::Index nr = h.n_rx(), ns = h.n_tx();
        if (nr == 0 || ns == 0)
            throw ContractError("stacked_channel: realization holds no data");
        ComplexMatrix H(n * nr, n * ns);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
            {
                if (!h.mask[p][q])
                    throw ContractError("stacked_channel: block " + polarization_label(p, q) +
                                        " was not sampled");
                H.block(p * nr, q * ns, nr, ns) = h.blocks[p][q];
            }
        return H;
    }

    ChannelSampler::ChannelSampler(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                   const CavityEnvironment &env, const SamplerOptions &opt)
        : tx_(tx), rx_(rx), env_(env), opt_(opt), mask_(block_mask(opt.blocks))
    {
        if (tx.size() == 0 || rx.size() == 0)
            throw DegenerateError("channel sampler: empty array");
        if (opt.K && !(*opt.K >= 0.0))
            throw DomainError("channel sampler: K must be non-negative");
        if (opt.sampling == SamplingMode::common_field)
        {
            if (opt.mode != ChannelMode::real)
                throw ContractError("channel sampler: common-field sampling produces real fields only");
            if (opt.n_waves == 0)
                throw DomainError("channel sampler: common-field sampling needs plane waves");
        }

        const auto pairs = pairwise_geometry(tx, rx);
        const Eigen::Index nr = Eigen::Index(rx.size()), ns = Eigen::Index(tx.size());
        for (int b = 0; b < 9; ++b)
        {
            los_[b] = RealMatrix::Zero(nr, ns);
            mean_[b] = RealMatrix::Zero(nr, ns);
            sd_[b] = RealMatrix::Zero(nr, ns);
        }
        c_ = RealMatrix::Constant(nr, ns, std::nan(""));
        w_los_ = RealMatrix::Ones(nr, ns);
        w_nlos_ = RealMatrix::Ones(nr, ns);

        for (Eigen::Index m = 0; m < nr; ++m)
            for (Eigen::Index n = 0; n < ns; ++n)
            {
                const auto cm = channel_moment_params(pairs(m, n), env);
                KWeights w;
                if (opt.K)
                {
                    const double c = kfactor_constant(cm, opt.kfactor_component);
                    c_(m, n) = c;
                    w = kfactor_weights(*opt.K, c);
                }
                w_los_(m, n) = w.los;
                w_nlos_(m, n) = w.nlos;
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                    {
                        const int b = 3 * p + q;
                        los_[b](m, n) = cm.mean_los[p][q];
                        mean_[b](m, n) = w.los * cm.mean_los[p][q] + w.nlos * cm.mean_nlos[p][q];
                        sd_[b](m, n) = w.nlos * std::sqrt(std::max(0.0, cm.variance[p][q]));
                    }
            }
    }

    ChannelRealization ChannelSampler::sample(RandomStream &stream) const
    {
        ChannelRealization h;
        h.mask = mask_;
        h.seed = stream.seed();
        h.stream_id = stream.stream_id();
        h.K = opt_.K;
        h.mode = opt_.mode;
        const Eigen::Index nr = Eigen::Index(rx_.size()), ns = Eigen::Index(tx_.size());

        if (opt_.sampling == SamplingMode::independent)
        {
            const double half = std::sqrt(0.5);
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q)
                {
                    if (!mask_[p][q])
                        continue;
                    const int b = 3 * p + q;
                    ComplexMatrix B(nr, ns);
                    for (Eigen::Index m = 0; m < nr; ++m)
                        for (Eigen::Index n = 0; n < ns; ++n)
                        {
                            const double s = sd_[b](m, n);
                            if (opt_.mode == ChannelMode::real)
                                B(m, n) = mean_[b](m, n) + s * stream.normal();
                            else
                            {
                                const double re = stream.normal(), im = stream.normal();
                                B(m, n) = Complex(mean_[b](m, n) + half * s * re, half * s * im);
                            }
                        }
                    h.blocks[p][q] = std::move(B);
                }
            return h;
        }

        // Common field: Psi(r) = sum_w a_w f_w cos(k e_w . r + beta_w), D_pq = Psi_p(rx) Psi_q(tx)
        const auto sp = spectral_params(env_);
        const double a0 = std::sqrt(2.0 / (double(opt_.n_waves) * env_.volume));
        std::vector<Vec3> psi_rx(rx_.size(), Vec3::Zero()), psi_tx(tx_.size(), Vec3::Zero());
        for (std::size_t w = 0; w < opt_.n_waves; ++w)
        {
            const double psi = stream.uniform(0.0, 2.0 * pi);
            const double phi = stream.uniform(0.0, 2.0 * pi);
            const double ct = stream.uniform(-1.0, 1.0);
            const double beta = stream.uniform(0.0, 2.0 * pi);
            const Vec3 f = a0 * stream.sign() * planewave_polarization(psi, phi, ct);
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            const Vec3 e(st * std::cos(phi), st * std::sin(phi), ct);
            const Vec3 ke = env_.k * e;
            for (std::size_t i = 0; i < rx_.size(); ++i)
                psi_rx[i] += f * std::cos(ke.dot(rx_.positions[i]) + beta);
            for (std::size_t i = 0; i < tx_.size(); ++i)
                psi_tx[i] += f * std::cos(ke.dot(tx_.positions[i]) + beta);
        }
        const double a = env_.field_scale * sp.scale;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
            {
                if (!mask_[p][q])
                    continue;
                const int b = 3 * p + q;
                ComplexMatrix B(nr, ns);
                for (Eigen::Index m = 0; m < nr; ++m)
                    for (Eigen::Index n = 0; n < ns; ++n)
                        B(m, n) = w_los_(m, n) * los_[b](m, n) +
                                  w_nlos_(m, n) * a * psi_rx[std::size_t(m)][p] * psi_tx[std::size_t(n)][q];
                h.blocks[p][q] = std::move(B);
            }
        return h;
    }

    ChannelRealization sample_isolated_channel(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                               const CavityEnvironment &env, std::optional<double> K,
                                               PolarizationSet polarizations, RandomStream &stream)
    {
        SamplerOptions opt;
        opt.K = K;
        opt.blocks = polarizations;
        return ChannelSampler(tx, rx, env, opt).sample(stream);
    }

    CouplingMatrix coupling_matrix(const ComplexMatrix &Z, CouplingSide side)
    {
        if (Z.rows() != Z.cols() || Z.rows() == 0)
            throw ShapeError("coupling_matrix: impedance matrix must be square and non-empty");
        if (!Z.allFinite())
            throw DomainError("coupling_matrix: impedance matrix has non-finite entries");

        const double zmax = Z.cwiseAbs().maxCoeff();
        if ((Z - Z.transpose()).cwiseAbs().maxCoeff() > 1e-9 * zmax)
            warn("coupling_matrix: impedance matrix is not symmetric (Z != Z^T)");

        ComplexMatrix A = Z;
        A.diagonal() += Z.diagonal();
        Eigen::JacobiSVD<ComplexMatrix> svd(A);
        const auto &s = svd.singularValues();
        const double smin = s(s.size() - 1);
        const double cond = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
        if (!(cond < max_coupling_condition))
        {
            std::ostringstream os;
            os << "coupling_matrix: Z + Z_s is ill-conditioned (condition number " << cond << ")";
            throw ConditioningError(os.str(), cond);
        }

        // C A = Z  <=>  A^T C^T = Z^T
        CouplingMatrix out;
        out.C = A.transpose().partialPivLu().solve(Z.transpose()).transpose();
        out.side = side;
        out.condition = cond;
        return out;
    }

    namespace
    {
        // Parses "a", "a+bi", "a-bj", "+bi" style complex literals. Returns false on failure.
        bool parse_complex(const std::string &tok, Complex &out)
        {
            const char *s = tok.c_str();
            char *end = nullptr;
            const double a = std::strtod(s, &end);
            if (end == s)
                return false;
            if (*end == '\0')
            {
                out = Complex(a, 0.0);
                return true;
            }
            if ((*end == 'i' || *end == 'j') && end[1] == '\0')
            {
                out = Complex(0.0, a);
                return true;
            }
            if (*end != '+' && *end != '-')
                return false;
            const char *s2 = end;
            const double b = std::strtod(s2, &end);
            if (end == s2)
            {
                // "a+i" / "a-i"
                if ((s2[1] == 'i' || s2[1] == 'j') && s2[2] == '\0')
                {
                    out = Complex(a, *s2 == '-' ? -1.0 : 1.0);
                    return true;
                }
                return false;
            }
            if ((*end != 'i' && *end != 'j') || end[1] != '\0')
                return false;
            out = Complex(a, b);
            return true;
        }

        std::string strip_comment(const std::string &line)
        {
            const auto pos = line.find('#');
            return pos == std::string::npos ? line : line.substr(0, pos);
        }
    }

    ComplexMatrix parse_impedance(std::istream &in)
    {
        std::string line;
        std::size_t lineno = 0;
        long n = -1;
        ComplexMatrix Z;
        long row = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            std::istringstream ls(strip_comment(line));
            std::string tok;
            if (!(ls >> tok))
                continue;
            if (n < 0)
            {
                long count = 0;
                std::string extra;
                if (tok != "N" || !(ls >> count) || count <= 0 || (ls >> extra))
                    throw ParseError("impedance file: expected header 'N <count>' on line " +
                                         std::to_string(lineno),
                                     lineno, "N");
                n = count;
                Z.resize(n, n);
                continue;
            }
            if (row >= n)
                throw ParseError("impedance file: more than N rows (line " + std::to_string(lineno) + ")",
                                 lineno);
            long col = 0;
            do
            {
                Complex v;
                if (!parse_complex(tok, v))
                    throw ParseError("impedance file: malformed entry '" + tok + "' on line " +
                                         std::to_string(lineno),
                                     lineno);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw ParseError("impedance file: non-finite entry on line " + std::to_string(lineno),
                                     lineno);
                if (col >= n)
                    throw ParseError("impedance file: row has more than N entries on line " +
                                         std::to_string(lineno),
                                     lineno);
                Z(row, col++) = v;
            } while (ls >> tok);
            if (col != n)
                throw ParseError("impedance file: row has " + std::to_string(col) + " entries, expected " +
                                     std::to_string(n) + " (line " + std::to_string(lineno) + ")",
                                 lineno);
            ++row;
        }
        if (n < 0)
            throw ParseError("impedance file: missing 'N <count>' header", lineno, "N");
        if (row != n)
            throw ParseError("impedance file: expected " + std::to_string(n) + " rows, found " +
                                 std::to_string(row),
                             lineno);
        return Z;
    }

    ComplexMatrix load_impedance(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open impedance file '" + path + "'");
        return parse_impedance(in);
    }

    void write_impedance(std::ostream &out, const ComplexMatrix &Z, int precision)
    {
        if (Z.rows() != Z.cols())
            throw ShapeError("write_impedance: matrix must be square");
        out << "N " << Z.rows() << '\n';
        out << std::setprecision(precision);
        for (Eigen::Index i = 0; i < Z.rows(); ++i)
        {
            for (Eigen::Index j = 0; j < Z.cols(); ++j)
            {
                const Complex v = Z(i, j);
                out << (j ? " " : "") << v.real() << (std::signbit(v.imag()) ? "-" : "+")
                    << std::abs(v.imag()) << 'i';
            }
            out << '\n';
        }
    }

    void save_impedance(const std::string &path, const ComplexMatrix &Z, int precision)
    {
        std::ofstream out(path);
        if (!out)
            throw IoError("cannot write impedance file '" + path + "'");
        write_impedance(out, Z, precision);
        if (!out)
            throw IoError("error while writing impedance file '" + path + "'");
    }

    ComplexMatrix synthetic_impedance(const ArrayGeometry &array, double wavelength, double r_self,
                                      double amplitude, double decay_wavelengths)
    {
        if (!(wavelength > 0.0) || !(decay_wavelengths > 0.0))
            throw DomainError("synthetic_impedance: wavelength and decay length must be positive");
        const std::size_t n = array.size();
        const double k = 2.0 * pi / wavelength;
        const double L = decay_wavelengths * wavelength;
        ComplexMatrix Z(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
            {
                if (i == j)
                {
                    Z(i, j) = r_self;
                    continue;
                }
                const double d = (array.positions[i] - array.positions[j]).norm();
                Z(i, j) = amplitude * std::exp(-d / L) * std::exp(Complex(0.0, -k * d));
            }
        return Z;
    }

    ChannelRealization apply_coupling(const ChannelRealization &h, const ComplexMatrix &C_r,
                                      const ComplexMatrix &C_s)
    {
        if (C_r.rows() != C_r.cols() || C_s.rows() != C_s.cols())
            throw ShapeError("apply_coupling: coupling matrices must be square");
        if (C_r.rows() != h.n_rx() || C_s.rows() != h.n_tx())
            throw ShapeError("apply_coupling: coupling matrix size does not match the arrays");
        ChannelRealization out = h;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
                if (h.mask[p][q])
                    out.blocks[p][q] = C_r * h.blocks[p][q] * C_s;
        out.coupled = true;
        return out;
    }

    namespace
    {
        ChannelRealization xx_only(ComplexMatrix B, const RandomStream &stream, std::optional<double> K)
        {
            ChannelRealization h;
            h.mask = block_mask(PolarizationSet::SP);
            h.blocks[0][0] = std::move(B);
            h.seed = stream.seed();
            h.stream_id = stream.stream_id();
            h.K = K;
            h.mode = ChannelMode::complex_envelope;
            return h;
        }
    }

    ChannelRealization baseline_rician(const ArrayGeometry &tx, const ArrayGeometry &rx, double K,
                                       double wavelength, RandomStream &stream, double entry_power)
    {
        if (!(K >= 0.0))
            throw DomainError("baseline_rician: K must be non-negative");
        if (!(entry_power >= 0.0))
            throw DomainError("baseline_rician: entry power must be non-negative");
        const double k = 2.0 * pi / wavelength;
        const double wl = std::isinf(K) ? 1.0 : std::sqrt(K / (K + 1.0));
        const double wn = std::isinf(K) ? 0.0 : std::sqrt(1.0 / (K + 1.0));
        const double g = std::sqrt(entry_power);
        const double half = std::sqrt(0.5);
        ComplexMatrix B(rx.size(), tx.size());
        for (std::size_t m = 0; m < rx.size(); ++m)
            for (std::size_t n = 0; n < tx.size(); ++n)
            {
                const double R = (rx.positions[m] - tx.positions[n]).norm();
                const double re = stream.normal(), im = stream.normal();
                B(m, n) = g * (wl * std::exp(Complex(0.0, -k * R)) + wn * half * Complex(re, im));
            }
        return xx_only(std::move(B), stream, K);
    }

    ChannelRealization baseline_iid_rayleigh(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                             RandomStream &stream, double entry_power)
    {
        if (!(entry_power >= 0.0))
            throw DomainError("baseline_iid_rayleigh: entry power must be non-negative");
        const double g = std::sqrt(0.5 * entry_power);
        ComplexMatrix B(rx.size(), tx.size());
        for (std::size_t m = 0; m < rx.size(); ++m)
            for (std::size_t n = 0; n < tx.size(); ++n)
            {
                const double re = stream.normal(), im = stream.normal();
                B(m, n) = g * Complex(re, im);
            }
        return xx_only(std::move(B), stream, 0.0);
    }

    double clarke_correlation(double spacing_over_lambda, bool three_d)
    {
        if (!(spacing_over_lambda >= 0.0))
            throw DomainError("clarke_correlation: spacing must be non-negative");
        const double x = 2.0 * pi * spacing_over_lambda;
        if (three_d)
            return x == 0.0 ? 1.0 : std::sin(x) / x;
        return bessel_j0(x);
    }

    void write_block_csv(std::ostream &out, const ChannelRealization &h, int p, int q)
    {
        if (p < 0 || p > 2 || q < 0 || q > 2 || !h.mask[p][q])
            throw ContractError("write_block_csv: block not present");
        const auto &B = h.blocks[p][q];
        out << "# block: " << polarization_label(p, q) << '\n'
            << "# rows: " << B.rows() << '\n'
            << "# cols: " << B.cols() << '\n'
            << "# seed: " << h.seed << '\n'
            << "# stream: " << h.stream_id << '\n'
            << "# mode: " << to_string(h.mode) << '\n'
            << "# coupled: " << (h.coupled ? "true" : "false") << '\n';
        out << std::setprecision(17);
        for (Eigen::Index i = 0; i < B.rows(); ++i)
        {
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                out << (j ? "," : "") << B(i, j).real() << ',' << B(i, j).imag();
            out << '\n';
        }
    }
}
