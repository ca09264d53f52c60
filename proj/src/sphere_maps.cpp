#include "antirips/sphere_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <json.hpp>

#include "antirips/errors.hpp"

namespace antirips {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> normalized(std::vector<double> a) {
    double n = norm(a);
    if (n < 1e-12) fail(ErrorKind::InvalidArgument, "cannot normalize a near-zero vector");
    for (double& c : a) c /= n;
    return a;
}

std::vector<double> lincomb(double s, const std::vector<double>& a, double t,
                            const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = s * a[k] + t * b[k];
    return out;
}

void check_scale_range(double r) {
    if (!(r > 2.0 * kPi / 3.0 - kScaleTol) || r > kPi + kScaleTol)
        fail(ErrorKind::InvalidArgument, "scale must satisfy 2*pi/3 < r <= pi");
}

// Local orthonormal frame of span{p0, p1}: b points at the midpoint (the
// pole N), a along the chord towards p0.
struct PlaneFrame {
    std::vector<double> a, b;
    double theta;   // geodesic distance d(p0, p1)
    double u, v;    // barycenter coordinates in (a, b)
};

PlaneFrame two_point_frame(const SphereMeasure& mu) {
    PlaneFrame f;
    const auto& p0 = mu.points[0];
    const auto& p1 = mu.points[1];
    f.theta = geodesic(p0, p1);
    f.b = normalized(lincomb(1.0, p0, 1.0, p1));
    f.a = normalized(lincomb(1.0, p0, -1.0, p1));
    double lambda0 = mu.weights[0];
    f.u = (2.0 * lambda0 - 1.0) * std::sin(f.theta / 2.0);
    f.v = std::cos(f.theta / 2.0);
    return f;
}

// rho in plane coordinates: either the point on the diameter [x1, -x1] or
// the second intersection of the shining line with the circle.
struct FlashTarget {
    double u, v;
    bool on_diameter;
};

FlashTarget flash_target(const PlaneFrame& f) {
    FlashTarget t;
    double u0 = f.u / (1.0 - f.v);
    if (std::fabs(u0) <= 1.0) {
        t.u = u0;
        t.v = 0.0;
        t.on_diameter = true;
        return t;
    }
    double du = f.u, dv = f.v - 1.0;
    double s = -2.0 * dv / (du * du + dv * dv);
    t.u = s * du;
    t.v = 1.0 + s * dv;
    t.on_diameter = false;
    return t;
}

SphereMeasure measure_from_chord(const PlaneFrame& f, int dim, double qu, double qv) {
    double w = std::sqrt(std::max(0.0, 1.0 - qv * qv));
    std::vector<double> right = normalized(lincomb(w, f.a, qv, f.b));
    std::vector<double> left = normalized(lincomb(-w, f.a, qv, f.b));
    double lambda = std::clamp((qu + w) / (2.0 * w), 0.0, 1.0);
    if (lambda >= 1.0) return sphere_dirac(std::move(right));
    if (lambda <= 0.0) return sphere_dirac(std::move(left));
    return make_sphere_measure(dim, {std::move(right), std::move(left)}, {lambda, 1.0 - lambda});
}

struct RadialParts {
    Bipartition split;
    double mass_first = 0.0, mass_second = 0.0;
    std::vector<double> star_first, star_second;
};

RadialParts radial_parts(const SphereMeasure& mu, double r, const Bipartition* split) {
    check_scale_range(r);
    Bipartition chosen;
    if (split) {
        chosen = *split;
        std::vector<char> seen(mu.size(), 0);
        if (chosen.first.empty() || chosen.second.empty())
            fail(ErrorKind::NoValidBipartition, "both clusters must be nonempty");
        for (int pos : chosen.first) seen[static_cast<std::size_t>(pos)] = 1;
        for (int pos : chosen.second) {
            if (seen[static_cast<std::size_t>(pos)])
                fail(ErrorKind::NoValidBipartition, "clusters overlap");
            seen[static_cast<std::size_t>(pos)] = 1;
        }
        for (char s : seen)
            if (!s) fail(ErrorKind::NoValidBipartition, "clusters do not cover the support");
        for (int i : chosen.first)
            for (int j : chosen.second)
                if (!at_least(geodesic(mu.points[static_cast<std::size_t>(i)],
                                       mu.points[static_cast<std::size_t>(j)]),
                              r))
                    fail(ErrorKind::NoValidBipartition, "supplied clusters are closer than r");
    } else {
        auto found = find_tavr_bipartition(mu, r);
        if (!found) fail(ErrorKind::NoValidBipartition, "no bipartition with cross distances >= r");
        chosen = *found;
    }

    RadialParts parts;
    parts.split = chosen;
    std::size_t width = mu.points[0].size();
    std::vector<double> bar_first(width, 0.0), bar_second(width, 0.0);
    for (int pos : chosen.first) parts.mass_first += mu.weights[static_cast<std::size_t>(pos)];
    for (int pos : chosen.second) parts.mass_second += mu.weights[static_cast<std::size_t>(pos)];
    for (int pos : chosen.first)
        for (std::size_t k = 0; k < width; ++k)
            bar_first[k] += mu.weights[static_cast<std::size_t>(pos)] / parts.mass_first *
                            mu.points[static_cast<std::size_t>(pos)][k];
    for (int pos : chosen.second)
        for (std::size_t k = 0; k < width; ++k)
            bar_second[k] += mu.weights[static_cast<std::size_t>(pos)] / parts.mass_second *
                             mu.points[static_cast<std::size_t>(pos)][k];
    if (norm(bar_first) < 1e-9 || norm(bar_second) < 1e-9)
        fail(ErrorKind::ZeroBarycenter, "cluster barycenter vanishes");
    if (dot(bar_first, bar_second) > std::cos(r) + 1e-9)
        throw std::logic_error("radial projection inner-product bound violated");
    parts.star_first = normalized(bar_first);
    parts.star_second = normalized(bar_second);
    return parts;
}

}  // namespace

SphereMeasure make_sphere_measure(int dim, std::vector<std::vector<double>> points,
                                  std::vector<double> weights) {
    if (dim < 1) fail(ErrorKind::InvalidArgument, "sphere dimension must be >= 1");
    if (points.empty() || points.size() != weights.size())
        fail(ErrorKind::InvalidArgument, "support/weight size mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) fail(ErrorKind::InvalidArgument, "weights must be positive");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "weights must sum to 1");
    for (auto& p : points) {
        if (static_cast<int>(p.size()) != dim + 1)
            fail(ErrorKind::InvalidArgument, "point dimension mismatch");
        double n = norm(p);
        if (std::fabs(n - 1.0) > 1e-9)
            fail(ErrorKind::InvalidArgument, "support points must be unit vectors");
        for (double& c : p) c /= n;
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (geodesic(points[i], points[j]) < 1e-12)
                fail(ErrorKind::InvalidArgument, "support points must be pairwise distinct");
    for (double& w : weights) w /= sum;
    SphereMeasure mu;
    mu.dim = dim;
    mu.points = std::move(points);
    mu.weights = std::move(weights);
    return mu;
}

SphereMeasure sphere_dirac(std::vector<double> x) {
    int dim = static_cast<int>(x.size()) - 1;
    return make_sphere_measure(dim, {std::move(x)}, {1.0});
}

double geodesic(const std::vector<double>& a, const std::vector<double>& b) {
    // 2*atan2(|a-b|, |a+b|) equals arccos(<a,b>) for unit vectors but stays
    // fully conditioned at both ends: exact negations give pi exactly.
    double diff = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff += (a[k] - b[k]) * (a[k] - b[k]);
        sum += (a[k] + b[k]) * (a[k] + b[k]);
    }
    return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

std::vector<double> antipode(const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = -x[k];
    return y;
}

double sphere_spread(const SphereMeasure& mu) {
    if (mu.size() <= 1) return kInf;
    double best = kInf;
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = i + 1; j < mu.size(); ++j)
            best = std::min(best, geodesic(mu.points[i], mu.points[j]));
    return best;
}

bool avrm_membership(const SphereMeasure& mu, double r) {
    return at_least(sphere_spread(mu), r);
}

double w1_sphere(const SphereMeasure& mu, const SphereMeasure& nu) {
    std::vector<std::vector<double>> cost(mu.size(), std::vector<double>(nu.size(), 0.0));
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            cost[i][j] = geodesic(mu.points[i], nu.points[j]);
    return w1_from_cost(mu.weights, nu.weights, cost).value;
}

SphereMeasure central_core_projection(const SphereMeasure& mu) {
    if (mu.size() == 1) {
        auto x = mu.points[0];
        auto neg = antipode(x);
        return make_sphere_measure(mu.dim, {std::move(x), std::move(neg)}, {0.5, 0.5});
    }
    if (mu.size() != 2 || geodesic(mu.points[0], mu.points[1]) < kPi - 1e-9)
        fail(ErrorKind::NotAntipodalSupport,
             "support must be a singleton or an antipodal pair");
    auto x = mu.points[0];
    auto neg = antipode(x);
    return make_sphere_measure(mu.dim, {std::move(x), std::move(neg)}, {0.5, 0.5});
}

SphereMeasure rho_flashlight(const SphereMeasure& mu, double r) {
    check_scale_range(r);
    if (mu.size() > 2) fail(ErrorKind::TooManySupportPoints, "flashlight needs <= 2 points");
    if (mu.size() == 1) return mu;  // delta_x is its own image
    double theta = geodesic(mu.points[0], mu.points[1]);
    if (!at_least(theta, r)) fail(ErrorKind::SpreadTooSmall, "support spread below r");
    if (theta >= kPi - 1e-9) return mu;  // antipodal pairs are fixed
    PlaneFrame frame = two_point_frame(mu);
    FlashTarget target = flash_target(frame);
    if (target.on_diameter) {
        double lambda1 = std::clamp((1.0 + target.u) / 2.0, 0.0, 1.0);
        auto x1 = frame.a;
        auto minus_x1 = antipode(frame.a);
        if (lambda1 >= 1.0) return sphere_dirac(std::move(x1));
        if (lambda1 <= 0.0) return sphere_dirac(std::move(minus_x1));
        return make_sphere_measure(mu.dim, {std::move(x1), std::move(minus_x1)},
                                   {lambda1, 1.0 - lambda1});
    }
    return sphere_dirac(normalized(lincomb(target.u, frame.a, target.v, frame.b)));
}

SphereMeasure flashlight_homotopy(const SphereMeasure& mu, double r, double t) {
    check_scale_range(r);
    if (t < -kScaleTol || t > 1.0 + kScaleTol)
        fail(ErrorKind::InvalidArgument, "homotopy time must lie in [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    if (mu.size() > 2) fail(ErrorKind::TooManySupportPoints, "flashlight needs <= 2 points");
    if (mu.size() == 1) return mu;
    double theta = geodesic(mu.points[0], mu.points[1]);
    if (!at_least(theta, r)) fail(ErrorKind::SpreadTooSmall, "support spread below r");
    if (theta >= kPi - 1e-9) return mu;
    if (t == 0.0) return mu;
    if (t == 1.0) return rho_flashlight(mu, r);
    PlaneFrame frame = two_point_frame(mu);
    FlashTarget target = flash_target(frame);
    double qu = (1.0 - t) * frame.u + t * target.u;
    double qv = (1.0 - t) * frame.v + t * target.v;
    return measure_from_chord(frame, mu.dim, qu, qv);
}

std::optional<Bipartition> find_tavr_bipartition(const SphereMeasure& mu, double r) {
    std::size_t k = mu.size();
    if (k < 2) return std::nullopt;
    if (k > 20) fail(ErrorKind::TooManySupportPoints, "bipartition scan limited to 20 points");
    for (std::uint32_t mask = 0; mask + 1 < (1u << (k - 1)); ++mask) {
        Bipartition split;
        split.first.push_back(0);
        for (std::size_t b = 1; b < k; ++b) {
            if ((mask >> (b - 1)) & 1)
                split.first.push_back(static_cast<int>(b));
            else
                split.second.push_back(static_cast<int>(b));
        }
        bool ok = true;
        for (int i : split.first) {
            for (int j : split.second)
                if (!at_least(geodesic(mu.points[static_cast<std::size_t>(i)],
                                       mu.points[static_cast<std::size_t>(j)]),
                              r)) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) return split;
    }
    return std::nullopt;
}

SphereMeasure rho_radial(const SphereMeasure& mu, double r, const Bipartition* split) {
    RadialParts parts = radial_parts(mu, r, split);
    return make_sphere_measure(mu.dim, {parts.star_first, parts.star_second},
                               {parts.mass_first, parts.mass_second});
}

SphereMeasure tavr_linear_homotopy(const SphereMeasure& mu, double r, double t,
                                   const Bipartition* split) {
    if (t < -kScaleTol || t > 1.0 + kScaleTol)
        fail(ErrorKind::InvalidArgument, "homotopy time must lie in [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    RadialParts parts = radial_parts(mu, r, split);

    std::vector<std::vector<double>> points;
    std::vector<double> weights;
    std::vector<char> side;  // 0 = first cluster, 1 = second
    auto push = [&](const std::vector<double>& p, double w, char s) {
        if (w <= 0.0) return;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (side[i] == s && geodesic(points[i], p) < 1e-12) {
                weights[i] += w;
                return;
            }
        points.push_back(p);
        weights.push_back(w);
        side.push_back(s);
    };
    for (int pos : parts.split.first)
        push(mu.points[static_cast<std::size_t>(pos)],
             (1.0 - t) * mu.weights[static_cast<std::size_t>(pos)], 0);
    push(parts.star_first, t * parts.mass_first, 0);
    for (int pos : parts.split.second)
        push(mu.points[static_cast<std::size_t>(pos)],
             (1.0 - t) * mu.weights[static_cast<std::size_t>(pos)], 1);
    push(parts.star_second, t * parts.mass_second, 1);

    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            if (side[i] == 0 && side[j] == 1 && geodesic(points[i], points[j]) < r - 1e-9)
                throw std::logic_error("radial homotopy violated the cross-distance bound");

    return make_sphere_measure(mu.dim, std::move(points), std::move(weights));
}

SphereMeasure triangle_param(const std::vector<double>& e1, const std::vector<double>& e2,
                             const std::vector<double>& y, const std::vector<double>& x,
                             double radius) {
    if (e1.size() != e2.size() || e1.size() != y.size() || e1.size() != x.size())
        fail(ErrorKind::InvalidArgument, "frame/point dimension mismatch");
    if (std::fabs(norm(e1) - 1.0) > 1e-9 || std::fabs(norm(e2) - 1.0) > 1e-9 ||
        std::fabs(dot(e1, e2)) > 1e-9)
        fail(ErrorKind::InvalidArgument, "frame is not orthonormal");
    if (radius < -kScaleTol || radius > 1.0 + kScaleTol)
        fail(ErrorKind::InvalidArgument, "radius must lie in [0,1]");
    radius = std::clamp(radius, 0.0, 1.0);
    double y1 = dot(y, e1), y2 = dot(y, e2);
    std::vector<double> residual = y;
    for (std::size_t k = 0; k < y.size(); ++k) residual[k] -= y1 * e1[k] + y2 * e2[k];
    if (norm(residual) > 1e-9) fail(ErrorKind::InvalidArgument, "y does not lie in span(V)");
    double alpha = std::atan2(y2, y1);

    double px1 = dot(x, e1), px2 = dot(x, e2);
    double pn = std::hypot(px1, px2);
    if (pn < 1e-9) fail(ErrorKind::DegenerateDirection, "x projects to (almost) zero in V");
    double ux = px1 / pn, uy = px2 / pn;

    double vx[3], vy[3];
    for (int k = 0; k < 3; ++k) {
        vx[k] = std::cos(alpha + 2.0 * kPi * k / 3.0);
        vy[k] = std::sin(alpha + 2.0 * kPi * k / 3.0);
    }
    // z: boundary point of the triangle along the ray through (ux, uy).
    double best_s = kInf;
    for (int k = 0; k < 3; ++k) {
        int k2 = (k + 1) % 3;
        // s*(ux,uy) = P + t*(Q-P)
        double ax = vx[k2] - vx[k], ay = vy[k2] - vy[k];
        double det = ux * (-ay) - uy * (-ax);
        if (std::fabs(det) < 1e-15) continue;
        double s = (vx[k] * (-ay) - vy[k] * (-ax)) / det;
        double tt = (ux * vy[k] - uy * vx[k]) / det;
        if (s > 0.0 && tt >= -1e-12 && tt <= 1.0 + 1e-12) best_s = std::min(best_s, s);
    }
    if (!(best_s < kInf)) throw std::logic_error("ray missed the triangle boundary");
    double zx = radius * best_s * ux, zy = radius * best_s * uy;

    // Barycentric coordinates from the 2x2 system plus the affine constraint.
    double m00 = vx[0] - vx[2], m01 = vx[1] - vx[2];
    double m10 = vy[0] - vy[2], m11 = vy[1] - vy[2];
    double det = m00 * m11 - m01 * m10;
    double a0 = ((zx - vx[2]) * m11 - (zy - vy[2]) * m01) / det;
    double a1 = (-(zx - vx[2]) * m10 + (zy - vy[2]) * m00) / det;
    double a2 = 1.0 - a0 - a1;
    double bary[3] = {a0, a1, a2};

    std::vector<std::vector<double>> points;
    std::vector<double> weights;
    for (int k = 0; k < 3; ++k) {
        double w = bary[k];
        if (w < -1e-9) throw std::logic_error("negative barycentric weight");
        if (w < 1e-14) continue;
        points.push_back(lincomb(vx[k], e1, vy[k], e2));
        weights.push_back(w);
    }
    return make_sphere_measure(static_cast<int>(e1.size()) - 1, std::move(points),
                               std::move(weights));
}

DiscreteMeasure pou_map(const FiniteMetricSpace& space, const std::vector<int>& net,
                        const DiscreteMeasure& mu, double r, double eps) {
    if (eps <= 0.0 || r <= 0.0) fail(ErrorKind::InvalidArgument, "r and eps must be positive");
    if (net.empty()) fail(ErrorKind::NotANet, "empty net");
    for (int x : net)
        if (x < 0 || x >= space.size()) fail(ErrorKind::InvalidArgument, "net index out of range");
    for (int y : mu.support)
        if (y < 0 || y >= space.size())
            fail(ErrorKind::MetricMismatch, "measure indexes a different metric space");
    double half = eps / 2.0;
    for (int y = 0; y < space.size(); ++y) {
        double mind = kInf;
        for (int x : net) mind = std::min(mind, space.d(y, x));
        if (mind >= half) fail(ErrorKind::NotANet, "net does not cover within eps/2");
    }
    // Domain check: the support must be a TAVR measure at scale r + eps
    // (singletons pass; otherwise some bipartition has cross distances
    // >= r + eps, which covers supports of spread >= r + eps as well).
    if (mu.support.size() >= 2) {
        std::size_t k = mu.support.size();
        if (k > 20) fail(ErrorKind::TooManySupportPoints, "bipartition scan limited to 20 points");
        bool ok = false;
        for (std::uint32_t mask = 0; mask + 1 < (1u << (k - 1)) && !ok; ++mask) {
            bool valid = true;
            for (std::size_t a = 0; a < k && valid; ++a) {
                bool a_side = (a == 0) || ((mask >> (a - 1)) & 1);
                if (!a_side) continue;
                for (std::size_t b = 1; b < k; ++b) {
                    if ((mask >> (b - 1)) & 1) continue;
                    if (!at_least(space.d(mu.support[a], mu.support[b]), r + eps)) {
                        valid = false;
                        break;
                    }
                }
            }
            ok = valid;
        }
        if (!ok)
            fail(ErrorKind::SpreadTooSmall, "support clusters are not r + eps apart");
    }

    std::vector<double> out_weights(net.size(), 0.0);
    for (std::size_t s = 0; s < mu.support.size(); ++s) {
        int y = mu.support[s];
        double total = 0.0;
        std::vector<double> hat(net.size(), 0.0);
        for (std::size_t i = 0; i < net.size(); ++i) {
            double h = std::max(0.0, 1.0 - space.d(y, net[i]) / half);
            hat[i] = h;
            total += h;
        }
        for (std::size_t i = 0; i < net.size(); ++i)
            out_weights[i] += mu.weights[s] * hat[i] / total;
    }
    std::vector<int> support;
    std::vector<double> weights;
    for (std::size_t i = 0; i < net.size(); ++i)
        if (out_weights[i] > 0.0) {
            support.push_back(net[i]);
            weights.push_back(out_weights[i]);
        }
    return make_measure(std::move(support), std::move(weights));
}

DiscreteLoop loop_gamma(const std::vector<double>& x_in, int resolution) {
    if (resolution < 8) fail(ErrorKind::InvalidArgument, "resolution must be >= 8");
    std::vector<double> x = normalized(x_in);
    int dim = static_cast<int>(x.size()) - 1;
    std::vector<double> neg = antipode(x);
    // Deterministic geodesic from -x to x: complete x with the lowest-index
    // basis vector that is safely non-parallel.
    std::vector<double> w;
    for (std::size_t k = 0; k < x.size(); ++k) {
        std::vector<double> e(x.size(), 0.0);
        e[k] = 1.0;
        double proj = dot(e, x);
        if (std::fabs(proj) < 0.9) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] -= proj * x[i];
            w = normalized(e);
            break;
        }
    }
    DiscreteLoop loop;
    loop.resolution = resolution;
    for (int i = 0; i <= resolution; ++i) {
        if (i == resolution) {
            loop.samples.push_back(loop.samples.front());
            break;
        }
        double t = static_cast<double>(i) / resolution;
        if (t <= 0.5) {
            double lam = 1.0 - 2.0 * t;
            if (lam >= 1.0)
                loop.samples.push_back(sphere_dirac(x));
            else if (lam <= 0.0)
                loop.samples.push_back(sphere_dirac(neg));
            else
                loop.samples.push_back(make_sphere_measure(dim, {x, neg}, {lam, 1.0 - lam}));
        } else {
            double s = 2.0 * t - 1.0;
            loop.samples.push_back(
                sphere_dirac(normalized(lincomb(-std::cos(kPi * s), x, std::sin(kPi * s), w))));
        }
    }
    double max_step = 2.0 * kPi / resolution + 1e-9;
    for (std::size_t i = 0; i + 1 < loop.samples.size(); ++i)
        if (w1_sphere(loop.samples[i], loop.samples[i + 1]) > max_step)
            throw std::logic_error("loop discretization step exceeded its bound");
    return loop;
}

DiscreteLoop map_loop(const DiscreteLoop& loop,
                      const std::function<std::vector<double>(const std::vector<double>&)>& f) {
    DiscreteLoop out;
    out.resolution = loop.resolution;
    for (const auto& sample : loop.samples) {
        std::vector<std::vector<double>> pts;
        std::vector<double> weights;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            std::vector<double> q = normalized(f(sample.points[i]));
            // Merge support points that collide under f.
            bool merged = false;
            for (std::size_t k = 0; k < pts.size(); ++k)
                if (geodesic(pts[k], q) < 1e-12) {
                    weights[k] += sample.weights[i];
                    merged = true;
                    break;
                }
            if (!merged) {
                pts.push_back(std::move(q));
                weights.push_back(sample.weights[i]);
            }
        }
        int dim = static_cast<int>(pts[0].size()) - 1;
        out.samples.push_back(make_sphere_measure(dim, std::move(pts), std::move(weights)));
    }
    return out;
}

namespace {

std::vector<double> canonical_rep(std::vector<double> rep) {
    for (double c : rep) {
        if (c > 1e-12) return rep;
        if (c < -1e-12) return antipode(rep);
    }
    return rep;
}

}  // namespace

std::vector<AntipodalClass> project_loop_to_rpn(const DiscreteLoop& loop, double r) {
    std::vector<AntipodalClass> classes;
    classes.reserve(loop.samples.size());
    for (const auto& sample : loop.samples) {
        SphereMeasure flashed = rho_flashlight(sample, r);
        SphereMeasure core = central_core_projection(flashed);
        classes.push_back({canonical_rep(core.points[0])});
    }
    return classes;
}

LiftResult lift_loop(const std::vector<AntipodalClass>& classes, bool flip_start) {
    if (classes.size() < 2) fail(ErrorKind::InvalidArgument, "loop needs at least two samples");
    LiftResult result;
    std::vector<double> current =
        flip_start ? antipode(classes[0].rep) : classes[0].rep;
    result.path.push_back(current);
    for (std::size_t i = 1; i < classes.size(); ++i) {
        double d_plus = geodesic(current, classes[i].rep);
        double d_minus = kPi - d_plus;
        if (std::min(d_plus, d_minus) >= kPi / 2.0 - 1e-9)
            fail(ErrorKind::AmbiguousLiftStep, "consecutive classes are a quarter turn apart");
        current = d_plus <= d_minus ? classes[i].rep : antipode(classes[i].rep);
        result.path.push_back(current);
    }
    double d_start = geodesic(result.path.front(), result.path.back());
    if (kPi - d_start <= 1e-6)
        result.verdict = LoopVerdict::Nontrivial;
    else if (d_start <= 1e-6)
        result.verdict = LoopVerdict::Trivial;
    else
        fail(ErrorKind::InvalidArgument, "lifted path does not end over the base class");
    return result;
}

double WeightSequence::total() const {
    double sum = 0.0;
    for (auto [id, w] : entries) sum += w;
    return sum;
}

int WeightSequence::distinct_positive_values() const {
    std::vector<double> vals;
    for (auto [id, w] : entries)
        if (w > 0.0) vals.push_back(w);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return static_cast<int>(vals.size());
}

CoverDimReport cover_dim_experiment(const FiniteMetricSpace& circle_sample, double r,
                                    double eps) {
    if (!circle_sample.has_ambient() || circle_sample.sphere_dim.value_or(0) != 1)
        fail(ErrorKind::InvalidArgument, "experiment expects an S^1 sample with coordinates");
    if (!(r > 2.0 * kPi / 3.0) || !(r < kPi))
        fail(ErrorKind::InvalidArgument, "scale must satisfy 2*pi/3 < r < pi");
    if (!(eps > 0.0) || !(eps < r)) fail(ErrorKind::InvalidArgument, "need 0 < eps < r");

    CoverDimReport report;
    const int n_manifold = 1;

    // Arc cover of multiplicity two: spacing <= eps/4, arc radius 0.75*spacing,
    // so diameters are 1.5*spacing <= 0.375*eps < eps/2 and consecutive arcs
    // overlap without triple intersections.
    int num_arcs = static_cast<int>(std::ceil(2.0 * kPi / (eps / 4.0)));
    double spacing = 2.0 * kPi / num_arcs;
    double half = 0.75 * spacing;
    for (int k = 0; k < num_arcs; ++k) report.arcs.push_back({k * spacing, half});

    auto circ_diff = [](double a, double b) {
        double d = std::fabs(std::fmod(a - b, 2.0 * kPi));
        if (d > kPi) d = 2.0 * kPi - d;
        return d;
    };
    auto arcs_containing = [&](double angle) {
        std::vector<int> ids;
        int near = static_cast<int>(std::llround(angle / spacing));
        for (int dk = -2; dk <= 2; ++dk) {
            int k = ((near + dk) % num_arcs + num_arcs) % num_arcs;
            if (circ_diff(angle, report.arcs[static_cast<std::size_t>(k)].center) < half)
                ids.push_back(k);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (ids.empty() || ids.size() > 2)
            throw std::logic_error("arc cover multiplicity is not two");
        return ids;
    };

    // The complex K of co-chargeable arcs, built exactly from the zones on
    // which x -> arcs(x) is constant: solo zones around the centers and
    // two-arc overlap zones between them.
    struct Zone {
        double lo, hi;
        std::vector<int> arcs;
    };
    std::vector<Zone> zones;
    for (int k = 0; k < num_arcs; ++k) {
        double c = k * spacing;
        zones.push_back({c - 0.25 * spacing, c + 0.25 * spacing, {k}});
        std::vector<int> pair{k, (k + 1) % num_arcs};
        std::sort(pair.begin(), pair.end());
        zones.push_back({c + 0.25 * spacing, c + 0.75 * spacing, pair});
    }
    // Max geodesic distance between two angular intervals (short intervals).
    auto max_interval_distance = [&](const Zone& za, const Zone& zb) {
        double lo = zb.lo - za.hi, hi = zb.hi - za.lo;
        double best = 0.0;
        for (double delta : {lo, hi}) {
            double d = std::fabs(std::fmod(delta, 2.0 * kPi));
            if (d > kPi) d = 2.0 * kPi - d;
            best = std::max(best, d);
        }
        // delta ranges over [lo, hi]; if some delta is congruent to pi the
        // intervals realize the full diameter.
        for (double target : {-3.0 * kPi, -kPi, kPi, 3.0 * kPi})
            if (lo <= target && target <= hi) best = kPi;
        return best;
    };
    std::set<std::vector<int>> simplices;
    auto add_with_faces = [&](std::vector<int> verts) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        std::size_t k = verts.size();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> face;
            for (std::size_t b = 0; b < k; ++b)
                if ((mask >> b) & 1) face.push_back(verts[b]);
            simplices.insert(std::move(face));
        }
    };
    for (const auto& z : zones) add_with_faces(z.arcs);  // single Diracs
    for (std::size_t a = 0; a < zones.size(); ++a)
        for (std::size_t b = a; b < zones.size(); ++b)
            if (at_least(max_interval_distance(zones[a], zones[b]), r)) {
                std::vector<int> verts = zones[a].arcs;
                verts.insert(verts.end(), zones[b].arcs.begin(), zones[b].arcs.end());
                add_with_faces(std::move(verts));
            }
    report.complex_simplices = simplices.size();
    for (const auto& s : simplices)
        report.complex_dimension =
            std::max(report.complex_dimension, static_cast<int>(s.size()) - 1);

    report.packing = packing_number_exact(circle_sample, r, circle_sample.size());
    report.dim_bound = (n_manifold + 1) * report.packing - 1;
    report.multiplicity_bound = (n_manifold + 1) * report.packing;

    // h(mu)_U = mu(U) * rho_U(x_U) evaluated over a grid of test measures;
    // the pulled-back cover is the open-star cover of the barycentric
    // subdivision of K, in which a weight sequence lies in exactly one star
    // per distinct positive weight value.
    std::vector<double> angles(static_cast<std::size_t>(circle_sample.size()));
    for (int i = 0; i < circle_sample.size(); ++i) {
        const auto& p = circle_sample.ambient[static_cast<std::size_t>(i)];
        double a = std::atan2(p[1], p[0]);
        if (a < 0.0) a += 2.0 * kPi;
        angles[static_cast<std::size_t>(i)] = a;
    }
    auto hat_weights = [&](double angle) {
        std::vector<std::pair<int, double>> out;
        auto ids = arcs_containing(angle);
        double total = 0.0;
        for (int k : ids)
            total += std::max(
                0.0, 1.0 - circ_diff(angle, report.arcs[static_cast<std::size_t>(k)].center) / half);
        for (int k : ids) {
            double h = std::max(
                0.0, 1.0 - circ_diff(angle, report.arcs[static_cast<std::size_t>(k)].center) / half);
            if (h > 0.0) out.emplace_back(k, h / total);
        }
        return out;
    };
    auto h_map = [&](const std::vector<std::pair<double, double>>& support) {
        WeightSequence ws;
        for (auto [angle, mass] : support)
            for (auto [arc, rho] : hat_weights(angle)) ws.entries.emplace_back(arc, mass * rho);
        std::sort(ws.entries.begin(), ws.entries.end());
        return ws;
    };
    auto record = [&](const WeightSequence& ws) {
        if (std::fabs(ws.total() - 1.0) > 1e-12) report.weight_sums_ok = false;
        std::vector<int> supp;
        for (auto [arc, w] : ws.entries)
            if (w > 0.0) supp.push_back(arc);
        std::sort(supp.begin(), supp.end());
        supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
        if (!simplices.count(supp))
            throw std::logic_error("h image left the chargeable complex");
        int mult = ws.distinct_positive_values();
        report.max_multiplicity = std::max(report.max_multiplicity, mult);
        if (static_cast<std::size_t>(mult) >= report.multiplicity_histogram.size())
            report.multiplicity_histogram.resize(static_cast<std::size_t>(mult) + 1, 0);
        ++report.multiplicity_histogram[static_cast<std::size_t>(mult)];
        ++report.measures_tested;
    };

    for (double angle : angles) record(h_map({{angle, 1.0}}));
    const double lambdas[] = {0.25, 0.5, 0.75};
    for (int i = 0; i < circle_sample.size(); ++i)
        for (int j = i + 1; j < circle_sample.size(); ++j) {
            if (!at_least(circle_sample.d(i, j), r)) continue;
            for (double lam : lambdas)
                record(h_map({{angles[static_cast<std::size_t>(i)], lam},
                              {angles[static_cast<std::size_t>(j)], 1.0 - lam}}));
        }
    return report;
}

namespace {

nlohmann::json sphere_measure_json(const SphereMeasure& mu) {
    nlohmann::json j;
    j["schema"] = "antirips.measure/1";
    j["points"] = mu.points;
    j["weights"] = mu.weights;
    return j;
}

}  // namespace

std::string sphere_measure_to_json(const SphereMeasure& mu) {
    return sphere_measure_json(mu).dump(2);
}

SphereMeasure sphere_measure_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::ParseError, "bad measure json");
    auto points = j.at("points").get<std::vector<std::vector<double>>>();
    auto weights = j.at("weights").get<std::vector<double>>();
    if (points.empty()) fail(ErrorKind::ParseError, "measure without support");
    int dim = static_cast<int>(points[0].size()) - 1;
    return make_sphere_measure(dim, std::move(points), std::move(weights));
}

std::string loop_to_json(const DiscreteLoop& loop) {
    nlohmann::json j;
    j["schema"] = "antirips.loop/1";
    j["resolution"] = loop.resolution;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& sample : loop.samples) arr.push_back(sphere_measure_json(sample));
    j["samples"] = std::move(arr);
    return j.dump(2);
}

std::string cover_dim_report_to_json(const CoverDimReport& report) {
    nlohmann::json j;
    j["schema"] = "antirips.coverdim/1";
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& arc : report.arcs)
        arcs.push_back({{"center", arc.center}, {"half_width", arc.half_width}});
    j["arcs"] = std::move(arcs);
    j["packing"] = report.packing;
    j["complex_dimension"] = report.complex_dimension;
    j["complex_simplices"] = report.complex_simplices;
    j["dim_bound"] = report.dim_bound;
    j["multiplicity_bound"] = report.multiplicity_bound;
    j["max_multiplicity"] = report.max_multiplicity;
    j["multiplicity_histogram"] = report.multiplicity_histogram;
    j["measures_tested"] = report.measures_tested;
    j["weight_sums_ok"] = report.weight_sums_ok;
    return j.dump(2);
}

}  // namespace antirips
