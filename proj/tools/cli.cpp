#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "parlike/instances.hpp"
#include "parlike/render.hpp"
#include "parlike/straighten.hpp"

namespace parlike::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string cnum(Complex z)
{
    if (is_infinity(z))
        return "inf";
    return num(z.real()) + (z.imag() < 0.0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---- maps and instances from the configuration ----

Complex key_complex(const JobConfig& c, const std::string& stem, Complex fallback)
{
    return {c.real(stem + "_re", fallback.real()), c.real(stem + "_im", fallback.imag())};
}

std::string map_kind(const JobConfig& c)
{
    const std::string m = c.str("map", "per1");
    if (m != "per1" && m != "h2" && m != "cubic" && m != "quad")
        throw ConfigError("map must be one of per1, h2, cubic, quad (got '" + m + "')");
    return m;
}

MapSpec make_map(const JobConfig& c)
{
    const std::string m = map_kind(c);
    if (m == "per1")
        return MapSpec::per_one(key_complex(c, "A", 1.0));
    if (m == "h2")
        return MapSpec::h_two();
    if (m == "cubic")
        return MapSpec::cubic(key_complex(c, "a", kI));
    const int q = c.integer("q", 3);
    if (q < 1)
        throw ConfigError("q must be at least 1");
    return MapSpec::quad_iter(key_complex(c, "c", fat_rabbit_c()), q);
}

void require_fat_rabbit(const JobConfig& c)
{
    if (std::abs(key_complex(c, "c", fat_rabbit_c()) - fat_rabbit_c()) > 1e-12 || c.integer("q", 3) != 3)
        throw ConfigError("map = quad is only available for the fat rabbit c = (-1 + 3 sqrt(3) i)/8 with q = 3");
}

PLInstance make_instance(const JobConfig& c)
{
    if (c.integer("control", 0) != 0)
        return rotated_control_instance();
    const std::string m = map_kind(c);
    PLInstance I;
    if (m == "h2") {
        const double eps = c.real("epsilon", 0.25);
        const bool any_m = c.has("m_plus_re") || c.has("m_plus_im") || c.has("m_minus_re") || c.has("m_minus_im");
        if (any_m) {
            for (const char* k : {"m_plus_re", "m_plus_im", "m_minus_re", "m_minus_im"})
                if (!c.has(k))
                    throw ConfigError(std::string("explicit arc endpoints need all of m_plus_re/_im, m_minus_re/_im (missing ") +
                                      k + ")");
            I = example1_instance_from(eps, key_complex(c, "m_plus", 0.0), key_complex(c, "m_minus", 0.0));
        } else {
            I = example1_instance(eps);
        }
    } else if (m == "cubic") {
        if (std::abs(key_complex(c, "a", kI) - kI) > 1e-12)
            throw ConfigError("map = cubic instances are only available for a = i");
        I = example2_instance();
    } else if (m == "quad") {
        require_fat_rabbit(c);
        I = example3_instance();
    } else {
        const Complex A = key_complex(c, "A", 1.0);
        I = perone_instance(A, c.real("extra_radius", 0.0));
    }
    if (c.has("U_file"))
        I.U = read_region(c.str("U_file", ""));
    if (c.has("U_prime_file"))
        I.U_prime = read_region(c.str("U_prime_file", ""));
    return I;
}

Assembly assemble_or_throw(const PLInstance& I, std::ostream& out, bool print_report)
{
    Assembly a = assemble_instance(I);
    if (print_report)
        out << a.report.to_text();
    if (!a.plm) {
        std::string names;
        for (Clause cl : a.report.failed())
            names += std::string(names.empty() ? "" : ", ") + clause_name(cl);
        throw NumericalError("parabolic-like assembly failed: " + names);
    }
    return a;
}

std::vector<Complex> parabolic_points(const MapSpec& f)
{
    std::vector<Complex> out;
    for (const auto& r : fixed_points(f))
        if (std::abs(r.multiplier - 1.0) < 1e-8)
            out.push_back(r.location);
    return out;
}

Viewport make_viewport(const JobConfig& c, double width, int px)
{
    Viewport vp;
    vp.center = key_complex(c, "center", 0.0);
    vp.width = vp.height = c.real("width", width);
    vp.px_w = vp.px_h = c.integer("px", px);
    vp.validate();
    return vp;
}

// Output stream: the --out / out file, or stdout.
class Sink {
public:
    Sink(const JobConfig& c, std::ostream& fallback) : os_(&fallback)
    {
        if (c.has("out")) {
            file_.open(c.str("out", ""), std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot open " + c.str("out", "") + " for writing");
            os_ = &file_;
        }
    }
    std::ostream& os() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

// ---- commands ----

int cmd_analyze(const JobConfig& c, std::ostream& out)
{
    const MapSpec f = make_map(c);
    out << "map            " << f.name() << "\n";
    out << "degree         " << f.degree() << "\n";
    out << "fixed points\n";
    for (const auto& r : fixed_points(f))
        out << "  z = " << cnum(r.location) << "   multiplier " << cnum(r.multiplier) << "   multiplicity "
            << r.algebraic_multiplicity << "\n";
    out << "critical points\n";
    for (Complex z : critical_points(f))
        out << "  z = " << cnum(z) << "\n";
    for (Complex p : parabolic_points(f)) {
        const ParabolicGerm g = germ_analyze(f, p);
        out << "parabolic point " << cnum(p) << "\n";
        out << "  n            " << g.multiplicity_n << "\n";
        out << "  a            " << cnum(g.leading_coeff_a) << "\n";
        out << "  c_hat        " << cnum(g.c_hat) << "\n";
        out << "  attracting   ";
        for (double d : g.attracting_dirs)
            out << num(d) << " ";
        out << "\n  repelling    ";
        for (double d : g.repelling_dirs)
            out << num(d) << " ";
        out << "\n";
    }
    return kOk;
}

int cmd_fatou(const JobConfig& c, std::ostream& stdout_)
{
    const MapSpec f = make_map(c);
    const auto pars = parabolic_points(f);
    if (pars.empty())
        throw NumericalError("the map has no parabolic fixed point");
    const std::string kind = c.str("kind", "attracting");
    if (kind != "attracting" && kind != "repelling")
        throw ConfigError("kind must be attracting or repelling");
    FatouChart chart(f, pars.front(), kind == "attracting" ? PetalKind::Attracting : PetalKind::Repelling,
                     c.integer("petal", 0));
    if (map_kind(c) == "per1" && kind == "attracting") {
        const Complex A = key_complex(c, "A", 1.0);
        try {
            chart = chart.anchored(2.0 + A, 1.0);
        } catch (const NumericalError&) {
            // 2 + A is not in this petal's basin; keep the bare chart.
        }
    }
    FatouOptions o = chart.options();
    o.iteration_cap = c.integer("max_iter", o.iteration_cap);
    chart.set_options(o);

    const Viewport vp = make_viewport(c, 4.0, 32);
    Sink sink(c, stdout_);
    std::ostream& os = sink.os();
    os << "z_re,z_im,phi_re,phi_im,residual\n";
    for (int j = 0; j < vp.px_h; ++j)
        for (int i = 0; i < vp.px_w; ++i) {
            const Complex z = vp.pixel(i, j);
            try {
                const Complex phi = fatou(chart, z);
                const double res = std::abs(fatou(chart, eval(f, z)) - phi - 1.0);
                os << num(z.real()) << ',' << num(z.imag()) << ',' << num(phi.real()) << ',' << num(phi.imag())
                   << ',' << num(res) << '\n';
            } catch (const NumericalError&) {
                // outside the petal's basin: no row
            }
        }
    return kOk;
}

int cmd_arc(const JobConfig& c, std::ostream& stdout_)
{
    const std::string m = map_kind(c);
    PLInstance I;
    if (m == "cubic") {
        I.map = make_map(c);
        I.gamma = ray_dividing_arc(I.map, 0.0, 0.0, 0.5, 2);
    } else if (m == "quad") {
        require_fat_rabbit(c);
        I.map = make_map(c);
        I.gamma = ray_dividing_arc(I.map, Complex(-1.0, std::sqrt(3.0)) / 4.0, 1.0 / 7.0, 2.0 / 7.0, 2);
    } else {
        I = make_instance(c);
    }
    const DividingArc& g = I.gamma;
    const double d = g.base_degree_d;
    Sink sink(c, stdout_);
    std::ostream& os = sink.os();
    os << "t,z_re,z_im,residual\n";
    for (std::size_t k = 0; k < g.params.size(); ++k) {
        const double t = g.params[k];
        if (std::abs(t) > 1.0)
            continue;
        const Complex z = I.to_plane(g.points[k]);
        os << num(t) << ',' << (is_infinity(z) ? "inf" : num(z.real())) << ','
           << (is_infinity(z) ? "inf" : num(z.imag())) << ',';
        if (std::abs(t) * d <= 1.0 + 1e-12)
            os << num(std::abs(eval(I.map, g.points[k]) - g.at(std::clamp(d * t, -1.0, 1.0))));
        os << '\n';
    }
    return kOk;
}

int cmd_verify(const JobConfig& c, std::ostream& out)
{
    const PLInstance I = make_instance(c);
    const Assembly a = assemble_instance(I);
    out << "instance                   " << I.name << "\n";
    out << a.report.to_text();
    out << "assembled                  " << (a.plm ? "yes, degree " + std::to_string(a.plm->degree_d) : "no") << "\n";
    return a.report.any_fail() ? kCheckFailed : kOk;
}

void write_image(const RasterImage& img, const std::string& path, std::ostream& out)
{
    if (ends_with(path, ".pgm"))
        write_pgm(img.px_w, img.px_h, k_mask(img), path);
    else
        write_ppm(img, path);
    out << "wrote " << path << " (" << img.px_w << "x" << img.px_h << ")\n";
}

int cmd_julia(const JobConfig& c, std::ostream& out, int threads)
{
    const int max_iter = c.integer("max_iter", kJuliaMaxIter);
    const std::string path = c.str("out", "julia.ppm");
    RasterImage img;
    if (map_kind(c) == "per1" && c.integer("control", 0) == 0) {
        const Viewport vp = make_viewport(c, 4.0, 512);
        img = render_julia(key_complex(c, "A", 1.0), vp, max_iter, threads);
    } else {
        const PLInstance I = make_instance(c);
        const Assembly a = assemble_or_throw(I, out, false);
        const Viewport vp = make_viewport(c, 4.0, 512);
        img = render_julia(*a.plm, vp, max_iter, threads);
    }
    write_image(img, path, out);
    return kOk;
}

int cmd_paramplane(const JobConfig& c, std::ostream& out, int threads)
{
    const Viewport vp = make_viewport(c, 8.0, 512);
    const RasterImage img = render_paramplane(vp, c.integer("max_iter", kParamMaxIter), threads);
    write_image(img, c.str("out", "paramplane.ppm"), out);
    return kOk;
}

int cmd_straighten(const JobConfig& c, std::ostream& out)
{
    const PLInstance I = make_instance(c);
    const Assembly a = assemble_or_throw(I, out, false);
    const StraighteningEstimate e = straighten_estimate(*a.plm);
    out << "instance         " << I.name << "\n";
    out << "A^2              " << cnum(e.A_squared) << "\n";
    out << "representatives  " << cnum(e.representatives.first) << " , " << cnum(e.representatives.second) << "\n";
    out << "method           " << method_name(e.method) << "\n";
    out << "confidence       " << confidence_name(e.confidence) << "\n";
    out << "residual         " << num(e.residual) << "\n";
    return kOk;
}

int cmd_selftest(std::ostream& out)
{
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-4s %-34s ", ok ? "pass" : "FAIL", name.c_str());
        out << buf << detail << "\n";
        failures += !ok;
    };

    const double res = h2_p0_conjugacy_residual(10000, 1);
    check("h2 / P0 conjugacy", res < 1e-12, "max residual " + num(res));

    const ExpansionProfile prof = circle_expansion_profile(10000);
    bool where = !prof.argmin_angles.empty();
    for (double t : prof.argmin_angles)
        where = where && (angle_distance(t, 0.0) < 1e-3 || angle_distance(t, kPi) < 1e-3);
    check("circle expansion minimum", std::abs(prof.min_modulus - 1.0) < 1e-9 && where,
          "min |h2'| = " + num(prof.min_modulus) + " at " + std::to_string(prof.argmin_angles.size()) + " angle(s)");
    const double di = h2_derivative_modulus(kI);
    check("|h2'(i)| = 4", std::abs(di - 4.0) < 1e-12, num(di));

    const double dc = std::abs(c_pq(1, 3) - fat_rabbit_c());
    check("fat rabbit c = c_{1/3}", dc < 1e-12, "difference " + num(dc));

    for (auto [A, n] : {std::pair<Complex, int>{1.0, 1}, {kI, 1}, {2.0, 1}, {0.0, 2}}) {
        const ParabolicGerm g = germ_analyze(MapSpec::per_one(A), kInfinity);
        const CVector s = series_at(MapSpec::per_one(A), kInfinity, 3);
        const double dev = std::abs(s(1) - 1.0) + std::abs(s(2) + A) + std::abs(s(3) - (A * A - 1.0));
        check("z + 1/z + (" + cnum(A) + ") at infinity", g.multiplicity_n == n && dev < 1e-12,
              "n = " + std::to_string(g.multiplicity_n) + ", series deviation " + num(dev));
    }
    for (auto [A, mu] : {std::pair<Complex, Complex>{1.0, 0.0}, {2.0, -3.0}, {kI, 2.0}}) {
        const Complex got = perone_fixed_multiplier(A);
        check("multiplier at -1/A for A = " + cnum(A), std::abs(got - mu) < 1e-15, cnum(got));
    }
    out << (failures ? std::to_string(failures) + " check(s) failed" : std::string("all checks passed")) << "\n";
    return failures ? kCheckFailed : kOk;
}

}  // namespace

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = {
        "map",        "A_re",       "A_im",         "a_re",         "a_im",       "c_re",       "c_im",
        "q",          "center_re",  "center_im",    "width",        "px",         "max_iter",   "out",
        "m_plus_re",  "m_plus_im",  "m_minus_re",   "m_minus_im",   "epsilon",    "kind",       "petal",
        "control",    "extra_radius", "U_file",     "U_prime_file",
    };
    return keys;
}

JobConfig JobConfig::parse(const std::string& text)
{
    JobConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (c.has(key))
            throw ConfigError("line " + std::to_string(lineno) + ": key '" + key + "' given twice");
        try {
            c.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return c;
}

JobConfig JobConfig::load(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

void JobConfig::set(const std::string& key, const std::string& value)
{
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError("unknown key '" + key + "'");
    if (value.empty())
        throw ConfigError("key '" + key + "' has an empty value");
    values_[key] = value;
}

void JobConfig::merge(const JobConfig& over)
{
    for (const auto& [k, v] : over.values_)
        values_[k] = v;
}

std::string JobConfig::str(const std::string& key, const std::string& fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double JobConfig::real(const std::string& key, double fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const std::string& s = it->second;
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError("key '" + key + "': '" + s + "' is not a decimal real");
    return v;
}

int JobConfig::integer(const std::string& key, int fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const std::string& s = it->second;
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError("key '" + key + "': '" + s + "' is not an integer");
    return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Parabolic-like maps: analysis, validation, straightening and rendering"};
    app.require_subcommand(1);

    struct Flags {
        std::string config;
        int threads = 0;
        std::map<std::string, std::string> keys;
    };
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "fixed points, critical points and parabolic germ data"},
        {"fatou", "CSV grid of a Fatou coordinate and its functional-equation residual"},
        {"arc", "CSV samples of the dividing arc"},
        {"verify-plm", "assemble a parabolic-like map and print the validation report"},
        {"julia", "render a filled Julia set (PPM, or PGM mask for a .pgm path)"},
        {"paramplane", "render the A-plane of z + 1/z + A"},
        {"straighten", "estimate A^2 of the straightened map"},
        {"selftest", "run the identity suite"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", flags.config, "key = value configuration file");
        sub->add_option("--threads", flags.threads, "render threads (0: all cores)")->check(CLI::NonNegativeNumber);
        for (const std::string& k : known_keys())
            sub->add_option("--" + k, flags.keys[k], "configuration key " + k);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        JobConfig cfg;
        if (!flags.config.empty())
            cfg = JobConfig::load(flags.config);
        JobConfig over;
        for (const std::string& k : known_keys())
            if (app.get_subcommands().front()->count("--" + k))
                over.set(k, flags.keys[k]);
        cfg.merge(over);

        if (command == "analyze")
            return cmd_analyze(cfg, out);
        if (command == "fatou")
            return cmd_fatou(cfg, out);
        if (command == "arc")
            return cmd_arc(cfg, out);
        if (command == "verify-plm")
            return cmd_verify(cfg, out);
        if (command == "julia")
            return cmd_julia(cfg, out, flags.threads);
        if (command == "paramplane")
            return cmd_paramplane(cfg, out, flags.threads);
        if (command == "straighten")
            return cmd_straighten(cfg, out);
        return cmd_selftest(out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace parlike::cli
