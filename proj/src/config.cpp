#include "enskog/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace enskog {

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&] {
          std::string s = "invalid configuration:";
          for (const auto& v : violations) s += "\n  - " + v;
          return s;
      }()),
      violations_(std::move(violations)) {}

std::string to_string(WallKernelKind kind) {
    switch (kind) {
        case WallKernelKind::Diffuse: return "diffuse";
        case WallKernelKind::Maxwell: return "maxwell";
        case WallKernelKind::CercignaniLampis: return "cercignani-lampis";
    }
    return "?";
}

std::string to_string(CollisionMode mode) {
    return mode == CollisionMode::FullQuadrature ? "full-quadrature" : "seeded-mc";
}

namespace {

using Errors = std::vector<std::string>;

class Section {
public:
    Section(const toml::table* table, std::string name, Errors& errors)
        : table_(table), name_(std::move(name)), errors_(errors) {}

    void number(const char* key, double& out) {
        seen_.push_back(key);
        const toml::node* n = find(key);
        if (n == nullptr) return;
        if (auto v = n->value<double>()) out = *v;
        else errors_.push_back(path(key) + ": expected a number");
    }
    template <class Int>
    void integer(const char* key, Int& out) {
        seen_.push_back(key);
        const toml::node* n = find(key);
        if (n == nullptr) return;
        if (n->is_integer()) {
            const auto v = n->as_integer()->get();
            if (std::is_unsigned_v<Int> && v < 0) errors_.push_back(path(key) + ": must not be negative");
            else out = static_cast<Int>(v);
        } else {
            errors_.push_back(path(key) + ": expected an integer");
        }
    }
    void boolean(const char* key, bool& out) {
        seen_.push_back(key);
        const toml::node* n = find(key);
        if (n == nullptr) return;
        if (auto v = n->value<bool>()) out = *v;
        else errors_.push_back(path(key) + ": expected true or false");
    }
    void text(const char* key, std::string& out) {
        seen_.push_back(key);
        const toml::node* n = find(key);
        if (n == nullptr) return;
        if (auto v = n->value<std::string>()) out = *v;
        else errors_.push_back(path(key) + ": expected a string");
    }
    void text_list(const char* key, std::vector<std::string>& out) {
        seen_.push_back(key);
        const toml::node* n = find(key);
        if (n == nullptr) return;
        const toml::array* a = n->as_array();
        if (a == nullptr) {
            errors_.push_back(path(key) + ": expected an array of strings");
            return;
        }
        out.clear();
        for (const auto& e : *a) {
            if (auto v = e.value<std::string>()) out.push_back(*v);
            else errors_.push_back(path(key) + ": expected an array of strings");
        }
    }
    template <class Enum, class Parse>
    void choice(const char* key, Enum& out, Parse parse) {
        std::string s;
        const std::size_t before = errors_.size();
        text(key, s);
        if (errors_.size() != before || find(key) == nullptr) return;
        try {
            out = parse(s);
        } catch (const std::invalid_argument& e) {
            errors_.push_back(path(key) + ": " + e.what());
        }
    }
    void reject_unknown(const std::vector<std::string>& subtables = {}) {
        if (table_ == nullptr) return;
        for (const auto& [k, v] : *table_) {
            const std::string key(k.str());
            const bool known = std::find(seen_.begin(), seen_.end(), key) != seen_.end() ||
                               std::find(subtables.begin(), subtables.end(), key) != subtables.end();
            if (!known) errors_.push_back("unknown key '" + path(key) + "'");
        }
    }

private:
    const toml::node* find(const char* key) const { return table_ ? table_->get(key) : nullptr; }
    std::string path(const std::string& key) const { return name_ + "." + key; }

    const toml::table* table_;
    std::string name_;
    Errors& errors_;
    std::vector<std::string> seen_;
};

const toml::table* subtable(const toml::table& root, const char* name, Errors& errors) {
    const toml::node* n = root.get(name);
    if (n == nullptr) return nullptr;
    if (!n->is_table()) {
        errors.push_back(std::string("'") + name + "' must be a table");
        return nullptr;
    }
    return n->as_table();
}

WallKernelKind wall_kind_from_string(const std::string& s) {
    for (WallKernelKind k : {WallKernelKind::Diffuse, WallKernelKind::Maxwell, WallKernelKind::CercignaniLampis})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown wall kernel '" + s + "' (diffuse, maxwell, cercignani-lampis)");
}

CollisionMode collision_mode_from_string(const std::string& s) {
    if (s == "full-quadrature") return CollisionMode::FullQuadrature;
    if (s == "seeded-mc") return CollisionMode::SeededMC;
    throw std::invalid_argument("unknown collision mode '" + s + "' (full-quadrature, seeded-mc)");
}

void read_wall(const toml::table* walls, const char* side, WallSpec& out, Errors& errors) {
    const toml::table* t = nullptr;
    if (walls != nullptr) {
        const toml::node* n = walls->get(side);
        if (n != nullptr && !n->is_table()) errors.push_back(std::string("'walls.") + side + "' must be a table");
        else if (n != nullptr) t = n->as_table();
    }
    Section s(t, std::string("walls.") + side, errors);
    s.choice("kind", out.kind, wall_kind_from_string);
    s.number("accommodation", out.accommodation);
    s.number("alpha_n", out.alpha_n);
    s.number("alpha_t", out.alpha_t);
    s.reject_unknown();
}

// Reading problems are appended to `errors`; fields that fail to read keep their defaults.
SimulationConfig from_table(const toml::table& root, Errors& errors) {
    SimulationConfig c;
    static const std::vector<std::string> sections{"geometry",    "velocity", "sphere", "physics",    "initial",
                                                   "correlation", "walls",    "vlasov", "integrator", "output"};
    for (const auto& [k, v] : root) {
        const std::string key(k.str());
        if (std::find(sections.begin(), sections.end(), key) == sections.end())
            errors.push_back("unknown key '" + key + "'");
    }
    {
        Section s(subtable(root, "geometry", errors), "geometry", errors);
        s.number("length", c.geometry.length);
        s.integer("cells", c.geometry.cells);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "velocity", errors), "velocity", errors);
        s.number("xi_max", c.velocity.xi_max);
        s.integer("points", c.velocity.points);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "sphere", errors), "sphere", errors);
        s.integer("order", c.integrator.sphere_order);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "physics", errors), "physics", errors);
        s.number("sigma", c.physics.sigma);
        s.number("mass", c.physics.mass);
        s.number("gas_constant", c.physics.gas_constant);
        s.number("wall_temperature", c.physics.wall_temperature);
        s.number("density", c.physics.density);
        s.number("transverse_area", c.physics.transverse_area);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "initial", errors), "initial", errors);
        s.number("temperature", c.initial.temperature);
        s.number("velocity", c.initial.velocity);
        s.text("profile", c.initial.profile);
        s.number("amplitude", c.initial.amplitude);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "correlation", errors), "correlation", errors);
        s.choice("model", c.correlation.model, correlation_kind_from_string);
        s.choice("h_collisional", c.correlation.h_collisional, hc_mode_from_string);
        s.integer("particles", c.correlation.particles);
        s.integer("samples", c.correlation.samples);
        s.integer("seed", c.correlation.seed);
        s.number("tolerance", c.correlation.tolerance);
        s.reject_unknown();
    }
    {
        const toml::table* walls = subtable(root, "walls", errors);
        read_wall(walls, "left", c.left, errors);
        read_wall(walls, "right", c.right, errors);
        Section s(walls, "walls", errors);
        s.reject_unknown({"left", "right"});
    }
    {
        Section s(subtable(root, "vlasov", errors), "vlasov", errors);
        s.boolean("enabled", c.vlasov.enabled);
        s.number("epsilon", c.vlasov.epsilon);
        s.number("gamma", c.vlasov.gamma);
        s.number("core_radius", c.vlasov.core_radius);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "integrator", errors), "integrator", errors);
        s.number("dt", c.integrator.dt);
        s.number("t_end", c.integrator.t_end);
        s.number("cfl", c.integrator.cfl);
        s.choice("collision_mode", c.integrator.collision_mode, collision_mode_from_string);
        s.integer("samples", c.integrator.samples);
        s.integer("seed", c.integrator.seed);
        s.number("collision_stability", c.integrator.collision_stability);
        s.reject_unknown();
    }
    {
        Section s(subtable(root, "output", errors), "output", errors);
        s.text("directory", c.output.directory);
        s.integer("every", c.output.every);
        s.integer("snapshot_every", c.output.snapshot_every);
        s.text_list("formats", c.output.formats);
        s.reject_unknown();
    }
    return c;
}

void apply_override(toml::table& root, const std::string& spec, Errors& errors) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        errors.push_back("override '" + spec + "' is not of the form section.key=value");
        return;
    }
    const std::string path = spec.substr(0, eq);
    const std::string raw = spec.substr(eq + 1);
    std::vector<std::string> parts;
    std::stringstream ss(path);
    for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
    if (parts.size() < 2) {
        errors.push_back("override '" + spec + "' needs a section and a key");
        return;
    }
    toml::table parsed;
    try {
        parsed = toml::parse("v = " + raw);
    } catch (const toml::parse_error&) {
        parsed = toml::table{};
        parsed.insert("v", raw);
    }
    toml::table* t = &root;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        toml::node* n = t->get(parts[i]);
        if (n == nullptr) {
            t->insert(parts[i], toml::table{});
            n = t->get(parts[i]);
        }
        if (!n->is_table()) {
            errors.push_back("override '" + spec + "': '" + parts[i] + "' is not a table");
            return;
        }
        t = n->as_table();
    }
    t->insert_or_assign(parts.back(), *parsed.get("v"));
}

SimulationConfig parse_table(toml::table root, const std::vector<std::string>& overrides) {
    Errors errors;
    for (const auto& o : overrides) apply_override(root, o, errors);
    if (!errors.empty()) throw ConfigError(errors);
    SimulationConfig c = from_table(root, errors);
    for (auto& v : validate(c)) errors.push_back(std::move(v));
    if (!errors.empty()) throw ConfigError(errors);
    return c;
}

toml::table to_table(const SimulationConfig& c) {
    auto wall = [](const WallSpec& w) {
        return toml::table{{"kind", to_string(w.kind)},
                           {"accommodation", w.accommodation},
                           {"alpha_n", w.alpha_n},
                           {"alpha_t", w.alpha_t}};
    };
    toml::array formats;
    for (const auto& f : c.output.formats) formats.push_back(f);
    return toml::table{
        {"geometry", toml::table{{"length", c.geometry.length}, {"cells", c.geometry.cells}}},
        {"velocity", toml::table{{"xi_max", c.velocity.xi_max}, {"points", c.velocity.points}}},
        {"sphere", toml::table{{"order", c.integrator.sphere_order}}},
        {"physics", toml::table{{"sigma", c.physics.sigma},
                                {"mass", c.physics.mass},
                                {"gas_constant", c.physics.gas_constant},
                                {"wall_temperature", c.physics.wall_temperature},
                                {"density", c.physics.density},
                                {"transverse_area", c.physics.transverse_area}}},
        {"initial", toml::table{{"temperature", c.initial.temperature},
                                {"velocity", c.initial.velocity},
                                {"profile", c.initial.profile},
                                {"amplitude", c.initial.amplitude}}},
        {"correlation", toml::table{{"model", to_string(c.correlation.model)},
                                    {"h_collisional", to_string(c.correlation.h_collisional)},
                                    {"particles", c.correlation.particles},
                                    {"samples", static_cast<std::int64_t>(c.correlation.samples)},
                                    {"seed", static_cast<std::int64_t>(c.correlation.seed)},
                                    {"tolerance", c.correlation.tolerance}}},
        {"walls", toml::table{{"left", wall(c.left)}, {"right", wall(c.right)}}},
        {"vlasov", toml::table{{"enabled", c.vlasov.enabled},
                               {"epsilon", c.vlasov.epsilon},
                               {"gamma", c.vlasov.gamma},
                               {"core_radius", c.vlasov.core_radius}}},
        {"integrator", toml::table{{"dt", c.integrator.dt},
                                   {"t_end", c.integrator.t_end},
                                   {"cfl", c.integrator.cfl},
                                   {"collision_mode", to_string(c.integrator.collision_mode)},
                                   {"samples", static_cast<std::int64_t>(c.integrator.samples)},
                                   {"seed", static_cast<std::int64_t>(c.integrator.seed)},
                                   {"collision_stability", c.integrator.collision_stability}}},
        {"output", toml::table{{"directory", c.output.directory},
                               {"every", c.output.every},
                               {"snapshot_every", c.output.snapshot_every},
                               {"formats", formats}}},
    };
}

}  // namespace

SimulationConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "TOML syntax error: " << e.description() << " at line " << e.source().begin.line;
        throw ConfigError({os.str()});
    }
    return parse_table(std::move(root), overrides);
}

SimulationConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), overrides);
}

SimulationConfig apply_overrides(const SimulationConfig& base, const std::vector<std::string>& overrides) {
    return parse_table(to_table(base), overrides);
}

std::string serialize(const SimulationConfig& config) {
    std::ostringstream os;
    os << toml::toml_formatter(to_table(config)) << "\n";
    return os.str();
}

std::string config_hash(const SimulationConfig& config) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : serialize(config)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::vector<std::string> validate(const SimulationConfig& c) {
    Errors e;
    auto need = [&](bool ok, const std::string& msg) {
        if (!ok) e.push_back(msg);
    };
    need(c.geometry.length > 0.0, "geometry.length must be positive");
    need(c.geometry.cells >= 2, "geometry.cells must be at least 2");
    need(c.velocity.xi_max > 0.0, "velocity.xi_max must be positive");
    need(c.velocity.points >= 4, "velocity.points must be at least 4");
    need(c.velocity.points % 2 == 0,
         "velocity.points must be even: an odd count breaks the xi -> -xi symmetry of the velocity grid");
    need(c.integrator.sphere_order >= 2, "sphere.order must be at least 2");
    need(c.integrator.sphere_order % 2 == 0, "sphere.order must be even so that the rule is closed under alpha -> -alpha");
    const auto& p = c.physics;
    need(p.sigma > 0.0, "physics.sigma must be positive");
    need(p.mass > 0.0, "physics.mass must be positive");
    need(p.gas_constant > 0.0, "physics.gas_constant must be positive");
    need(p.wall_temperature > 0.0, "physics.wall_temperature must be positive");
    need(p.density > 0.0, "physics.density must be positive");
    need(p.transverse_area > 0.0, "physics.transverse_area must be positive");
    need(c.initial.temperature > 0.0, "initial.temperature must be positive");
    need(c.initial.profile == "uniform" || c.initial.profile == "cosine",
         "initial.profile must be 'uniform' or 'cosine'");
    need(std::abs(c.initial.amplitude) < 1.0, "initial.amplitude must lie in (-1, 1)");
    if (p.gas_constant > 0.0 && c.initial.temperature > 0.0 && p.wall_temperature > 0.0) {
        const double t_max = std::max(c.initial.temperature, p.wall_temperature);
        const double need_xi = 5.0 * std::sqrt(p.gas_constant * t_max) + std::abs(c.initial.velocity);
        need(c.velocity.xi_max >= need_xi, "velocity.xi_max must be at least 5 sqrt(R T_max) + |u| = " +
                                               std::to_string(need_xi) + " to hold the Maxwellian tails");
    }
    if (!consistent_pairing(c.correlation.model, c.correlation.h_collisional))
        e.push_back("pairing rule: correlation.model '" + to_string(c.correlation.model) +
                    "' cannot be combined with correlation.h_collisional '" + to_string(c.correlation.h_collisional) +
                    "' (unity pairs with ideal or unity-virial, contact-cs with cs-surrogate, config-oracle with config-oracle)");
    if (c.correlation.model == CorrelationKind::ContactCS && p.sigma > 0.0 && p.mass > 0.0) {
        const double amp = c.initial.profile == "cosine" ? std::abs(c.initial.amplitude) : 0.0;
        need(packing_fraction(p.density * (1.0 + amp), p.sigma, p.mass) < kMaxPackingFraction,
             "packing fraction must stay below 0.64");
    }
    if (c.correlation.model == CorrelationKind::ConfigOracle) {
        need(c.correlation.particles >= 2, "correlation.particles must be at least 2");
        need(c.correlation.samples >= 100, "correlation.samples must be at least 100");
        need(c.correlation.tolerance > 0.0, "correlation.tolerance must be positive");
        if (p.mass > 0.0 && c.correlation.particles >= 2) {
            const double n = p.density * c.geometry.length * p.transverse_area / p.mass;
            need(std::abs(n - c.correlation.particles) <= 1e-3 * c.correlation.particles,
                 "physics.density * geometry.length * physics.transverse_area / physics.mass must equal "
                 "correlation.particles");
        }
    }
    for (const auto& [name, w] : {std::pair{"walls.left", c.left}, std::pair{"walls.right", c.right}}) {
        try {
            validate(w);
        } catch (const std::invalid_argument& ex) {
            e.push_back(std::string(name) + ": " + ex.what());
        }
    }
    if (c.vlasov.enabled) {
        need(c.vlasov.epsilon >= 0.0, "vlasov.epsilon must not be negative");
        need(c.vlasov.gamma > 2.0, "vlasov.gamma must exceed 2 for a finite slab kernel");
        need(c.vlasov.core_radius >= 0.0, "vlasov.core_radius must not be negative (0 selects sigma)");
    }
    const auto& it = c.integrator;
    need(it.dt > 0.0, "integrator.dt must be positive");
    need(it.t_end >= 0.0, "integrator.t_end must not be negative");
    need(it.cfl > 0.0 && it.cfl <= 0.9, "integrator.cfl must lie in (0, 0.9]");
    need(it.samples >= 1, "integrator.samples must be at least 1");
    need(it.collision_stability > 0.0 && it.collision_stability <= 0.5,
         "integrator.collision_stability must lie in (0, 0.5]");
    if (it.dt > 0.0 && c.geometry.cells >= 2 && c.geometry.length > 0.0 && c.velocity.points >= 4 &&
        c.velocity.xi_max > 0.0) {
        const double h = 2.0 * c.velocity.xi_max / c.velocity.points;
        const double umax = c.velocity.xi_max - 0.5 * h;
        const double dt_max = it.cfl * (c.geometry.length / c.geometry.cells) / umax;
        need(it.dt <= dt_max, "integrator.dt violates the CFL bound dt <= cfl dx / max|xi_x| = " + std::to_string(dt_max));
    }
    need(c.output.every >= 1, "output.every must be at least 1");
    need(c.output.snapshot_every >= 0, "output.snapshot_every must not be negative");
    need(!c.output.directory.empty(), "output.directory must not be empty");
    for (const auto& f : c.output.formats)
        need(f == "csv" || f == "json" || f == "gnuplot", "output.formats: unknown format '" + f + "'");
    return e;
}

SolverSetup make_solver_setup(const SimulationConfig& c) {
    SolverSetup s;
    s.phase_space = std::make_shared<const PhaseSpace>(SpatialGrid(c.geometry.length, c.geometry.cells),
                                                       VelocityGrid(c.velocity.xi_max, c.velocity.points));
    s.gas = {c.physics.sigma, c.physics.mass, c.physics.gas_constant};
    s.correlation.kind = c.correlation.model;
    s.correlation.oracle = {c.correlation.particles, c.correlation.samples, c.correlation.seed,
                            std::sqrt(c.physics.transverse_area), c.correlation.tolerance};
    s.collision.mode = c.integrator.collision_mode;
    s.collision.sphere_order = c.integrator.sphere_order;
    s.collision.samples = c.integrator.samples;
    s.collision.seed = c.integrator.seed;
    s.collision.reference_temperature = c.physics.wall_temperature;
    s.left = c.left;
    s.right = c.right;
    s.wall_temperature = c.physics.wall_temperature;
    if (c.vlasov.enabled) {
        VlasovSettings v = c.vlasov;
        if (v.core_radius == 0.0) v.core_radius = c.physics.sigma;
        s.vlasov = v;
    }
    s.collision_stability = c.integrator.collision_stability;
    return s;
}

RunSettings make_run_settings(const SimulationConfig& c) {
    RunSettings r;
    r.dt = c.integrator.dt;
    r.t_end = c.integrator.t_end;
    r.cfl = c.integrator.cfl;
    r.output_every = c.output.every;
    r.snapshot_every = c.output.snapshot_every;
    r.hc.mode = c.correlation.h_collisional;
    r.hc.gas = {c.physics.sigma, c.physics.mass, c.physics.gas_constant};
    r.hc.transverse_area = c.physics.transverse_area;
    return r;
}

Distribution make_initial_state(const SimulationConfig& c, const PhaseSpacePtr& ps) {
    const int n = ps->space.cells();
    std::vector<double> rho(static_cast<std::size_t>(n));
    std::vector<double> u(static_cast<std::size_t>(n), c.initial.velocity);
    std::vector<double> t(static_cast<std::size_t>(n), c.initial.temperature);
    for (int k = 0; k < n; ++k) {
        double r = c.physics.density;
        if (c.initial.profile == "cosine")
            r *= 1.0 + c.initial.amplitude * std::cos(kPi * ps->space.center(k) / ps->space.length());
        rho[static_cast<std::size_t>(k)] = r;
    }
    return make_local_maxwellian(ps, rho, u, t, c.physics.gas_constant);
}

}  // namespace enskog
