// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/scene_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mmwsim {

namespace {

struct TomlValue {
    enum class Kind { number, boolean, string, number_array, table_array };
    Kind kind = Kind::number;
    double num = 0.0;
    bool flag = false;
    std::string str;
    std::vector<double> nums;
    std::vector<std::map<std::string, double>> tables;
    int line = 0;
};

using Section = std::map<std::string, TomlValue>;

bool known_section(const std::string& s) {
    return s == "radar" || s == "frequency" || s == "obstacle" || s == "target";
}

/// Recursive-descent scanner for the supported TOML subset: [section] headers,
/// key = value lines, '#' comments, values that are numbers, booleans,
/// "strings", [number, ...] arrays, or [{k = v, ...}, ...] inline-table arrays
/// (arrays may span lines).
struct Parser {
    std::string_view text;
    std::string name;
    std::size_t pos = 0;
    int line = 1;

    [[noreturn]] void fail(const std::string& msg, int at_line = -1) const {
        throw std::invalid_argument(name + ":" + std::to_string(at_line < 0 ? line : at_line) +
                                    ": " + msg);
    }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char get() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    void skip(bool newlines) {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (c == '\n' && newlines) {
                get();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip(false);
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }

    void expect_eol() {
        skip(false);
        if (eof()) return;
        if (peek() != '\n') fail(std::string("unexpected text after value: '") + peek() + "'");
        get();
    }

    std::string ident() {
        skip(false);
        const std::size_t start = pos;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ++pos;
        if (pos == start) fail("expected a name");
        return std::string(text.substr(start, pos - start));
    }

    std::string quoted() {
        expect('"');
        std::string out;
        while (!eof() && peek() != '"' && peek() != '\n') out.push_back(get());
        if (eof() || peek() != '"') fail("unterminated string");
        get();
        return out;
    }

    double number() {
        skip(false);
        const std::size_t start = pos;
        while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                          std::strchr("+-.eE_", peek()) != nullptr))
            ++pos;
        std::string tok(text.substr(start, pos - start));
        std::erase(tok, '_');
        if (tok.empty()) fail("expected a number");
        char* endp = nullptr;
        const double v = std::strtod(tok.c_str(), &endp);
        if (endp != tok.c_str() + tok.size()) fail("malformed number '" + tok + "'");
        return v;
    }

    std::map<std::string, double> inline_table() {
        expect('{');
        std::map<std::string, double> t;
        skip(false);
        if (!eof() && peek() == '}') {
            get();
            return t;
        }
        while (true) {
            const std::string k = ident();
            expect('=');
            if (!t.emplace(k, number()).second) fail("duplicate key '" + k + "'");
            skip(false);
            if (!eof() && peek() == ',') {
                get();
                continue;
            }
            expect('}');
            break;
        }
        return t;
    }

    TomlValue value() {
        skip(false);
        if (eof()) fail("expected a value");
        TomlValue v;
        v.line = line;
        const char c = peek();
        if (c == '"') {
            v.kind = TomlValue::Kind::string;
            v.str = quoted();
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::string w = ident();
            if (w == "true" || w == "false") {
                v.kind = TomlValue::Kind::boolean;
                v.flag = (w == "true");
                return v;
            }
            fail("expected a value, got '" + w + "'");
        }
        if (c == '[') {
            get();
            skip(true);
            if (!eof() && peek() == '{') {
                v.kind = TomlValue::Kind::table_array;
                while (true) {
                    skip(true);
                    if (eof()) fail("unterminated array", v.line);
                    if (peek() == ']') {
                        get();
                        break;
                    }
                    v.tables.push_back(inline_table());
                    skip(true);
                    if (!eof() && peek() == ',') get();
                }
            } else {
                v.kind = TomlValue::Kind::number_array;
                while (true) {
                    skip(true);
                    if (eof()) fail("unterminated array", v.line);
                    if (peek() == ']') {
                        get();
                        break;
                    }
                    v.nums.push_back(number());
                    skip(true);
                    if (!eof() && peek() == ',') get();
                }
            }
            return v;
        }
        v.kind = TomlValue::Kind::number;
        v.num = number();
        return v;
    }

    std::map<std::string, Section> document() {
        std::map<std::string, Section> doc;
        std::string current;
        while (true) {
            skip(true);
            if (eof()) break;
            if (peek() == '[') {
                get();
                const std::string s = ident();
                expect(']');
                expect_eol();
                if (!known_section(s)) fail("unknown section [" + s + "]");
                if (doc.contains(s)) fail("duplicate section [" + s + "]");
                doc[s];
                current = s;
                continue;
            }
            if (current.empty()) fail("key outside of any [section]");
            const std::string k = ident();
            expect('=');
            TomlValue v = value();
            expect_eol();
            if (!doc[current].emplace(k, std::move(v)).second)
                fail("duplicate key '" + k + "' in [" + current + "]");
        }
        return doc;
    }
};

/// Typed access to one parsed section with unknown-key detection.
struct SectionReader {
    const std::string& file;
    std::string section;
    const Section* sec;
    mutable std::set<std::string> used;

    [[noreturn]] void fail(const std::string& msg, int line) const {
        throw std::invalid_argument(file + ":" + std::to_string(line) + ": " + msg);
    }

    const TomlValue* find(const std::string& key) const {
        if (sec == nullptr) return nullptr;
        const auto it = sec->find(key);
        if (it == sec->end()) return nullptr;
        used.insert(key);
        return &it->second;
    }

    const TomlValue& require(const std::string& key, TomlValue::Kind kind,
                             const char* what) const {
        const TomlValue* v = find(key);
        if (v == nullptr || v->kind != kind) {
            const int line = v != nullptr ? v->line : 0;
            const std::string msg = "[" + section + "] " + key + " must be " + what;
            if (v == nullptr)
                throw std::invalid_argument(file + ": missing key: " + msg);
            fail(msg, line);
        }
        return *v;
    }

    double number(const std::string& key, double fallback) const {
        if (find(key) == nullptr) return fallback;
        return require(key, TomlValue::Kind::number, "a number").num;
    }

    int integer(const std::string& key, int fallback) const {
        if (find(key) == nullptr) return fallback;
        const TomlValue& v = require(key, TomlValue::Kind::number, "an integer");
        const double r = v.num;
        if (r != static_cast<double>(static_cast<long long>(r)))
            fail("[" + section + "] " + key + " must be an integer", v.line);
        return static_cast<int>(r);
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (find(key) == nullptr) return fallback;
        return require(key, TomlValue::Kind::boolean, "true or false").flag;
    }

    std::array<double, 2> pair(const std::string& key, std::array<double, 2> fallback) const {
        if (find(key) == nullptr) return fallback;
        const TomlValue& v = require(key, TomlValue::Kind::number_array, "an array [a, b]");
        if (v.nums.size() != 2)
            fail("[" + section + "] " + key + " must have exactly two entries", v.line);
        return {v.nums[0], v.nums[1]};
    }

    void finish() const {
        if (sec == nullptr) return;
        for (const auto& [key, v] : *sec)
            if (!used.contains(key)) fail("unknown key '" + key + "' in [" + section + "]", v.line);
    }
};

Material material_from(const SectionReader& r, const std::map<std::string, double>& t, int line) {
    double re = 1.0, im = 0.0;
    std::set<std::string> seen;
    for (const auto& [k, v] : t) {
        if (k == "eps_re")
            re = v;
        else if (k == "eps_im")
            im = v;
        else if (k != "x_from_m" && k != "x_to_m")
            r.fail("unknown key '" + k + "' in [" + r.section + "] profile entry", line);
    }
    if (!(re > 0.0)) r.fail("[" + r.section + "] eps_re must be positive", line);
    if (im < 0.0) r.fail("[" + r.section + "] eps_im must be a non-negative loss magnitude", line);
    return Material::lossy(re, im);
}

/// Shortest "%.*g" rendering that round-trips through strtod.
std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    std::string s(buf);
    // Ensure the token re-parses as a float-looking number (cosmetic only).
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_not_of("-0123456789") == std::string::npos)
        s += ".0";
    return s;
}

}  // namespace

Scene parse_scene_toml(const std::string& text, const std::string& name) {
    Parser parser{text, name};
    const std::map<std::string, Section> doc = parser.document();
    const auto section = [&](const char* s) -> const Section* {
        const auto it = doc.find(s);
        return it == doc.end() ? nullptr : &it->second;
    };

    Scene scene;

    SectionReader radar{name, "radar", section("radar"), {}};
    scene.scan.y_tr = radar.number("y_tr_m", scene.scan.y_tr);
    scene.scan.x_start = radar.number("x_start_m", scene.scan.x_start);
    scene.scan.x_step = radar.number("x_step_m", scene.scan.x_step);
    scene.scan.count = radar.integer("count", scene.scan.count);
    radar.finish();

    SectionReader freq{name, "frequency", section("frequency"), {}};
    scene.freq.f_start = freq.number("start_hz", scene.freq.f_start);
    scene.freq.f_step = freq.number("step_hz", scene.freq.f_step);
    scene.freq.count = freq.integer("count", scene.freq.count);
    freq.finish();

    SectionReader obst{name, "obstacle", section("obstacle"), {}};
    if (obst.sec != nullptr && obst.boolean("present", true)) {
        SlabObstacle slab;
        slab.y_front = obst.number("y_front_m", slab.y_front);
        slab.thickness = obst.number("thickness_m", slab.thickness);
        slab.x_extent = obst.pair("x_extent_m", slab.x_extent);
        if (const TomlValue* v = obst.find("phase_model"); v != nullptr) {
            if (v->kind != TomlValue::Kind::string ||
                (v->str != "excess" && v->str != "printed"))
                obst.fail("[obstacle] phase_model must be \"excess\" or \"printed\"", v->line);
            slab.phase_model =
                v->str == "excess" ? SlabPhaseModel::excess : SlabPhaseModel::printed;
        }
        const TomlValue& prof = obst.require("profile", TomlValue::Kind::table_array,
                                             "an array of { x_from_m, x_to_m, eps_re, eps_im }");
        for (const auto& t : prof.tables) {
            ProfileSegment seg;
            if (!t.contains("x_from_m") || !t.contains("x_to_m"))
                obst.fail("[obstacle] profile entry needs x_from_m and x_to_m", prof.line);
            seg.x_from = t.at("x_from_m");
            seg.x_to = t.at("x_to_m");
            seg.material = material_from(obst, t, prof.line);
            slab.profile.push_back(seg);
        }
        scene.obstacle = std::move(slab);
    } else if (obst.sec != nullptr) {
        // present = false: accept and ignore the remaining keys.
        for (const auto& [key, v] : *obst.sec) obst.used.insert(key);
    }
    obst.finish();

    SectionReader target{name, "target", section("target"), {}};
    if (target.sec != nullptr && target.boolean("present", true)) {
        TargetPlate plate;
        plate.x_extent = target.pair("x_extent_m", plate.x_extent);
        plate.y = target.number("y_m", plate.y);
        const double re = target.number("eps_re", plate.material.eps_rel.real());
        const double im = target.number("eps_im", -plate.material.eps_rel.imag());
        if (!(re > 0.0)) throw std::invalid_argument(name + ": [target] eps_re must be positive");
        if (im < 0.0)
            throw std::invalid_argument(name +
                                        ": [target] eps_im must be a non-negative loss magnitude");
        plate.material = Material::lossy(re, im);
        scene.target = plate;
    } else if (target.sec != nullptr) {
        for (const auto& [key, v] : *target.sec) target.used.insert(key);
    }
    target.finish();

    try {
        scene.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(name + ": " + e.what());
    }
    return scene;
}

Scene load_scene_toml(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open scene file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_toml(buf.str(), path);
}

std::string scene_to_toml(const Scene& scene) {
    std::ostringstream out;
    out << "# Monostatic scan scene. Lengths in meters, frequencies in Hz; eps_im is\n"
           "# the positive loss magnitude (relative permittivity eps_re - j*eps_im).\n"
           "\n[radar]\n";
    out << "y_tr_m = " << format_double(scene.scan.y_tr) << "\n";
    out << "x_start_m = " << format_double(scene.scan.x_start) << "\n";
    out << "x_step_m = " << format_double(scene.scan.x_step) << "\n";
    out << "count = " << scene.scan.count << "\n";

    out << "\n[frequency]\n";
    out << "start_hz = " << format_double(scene.freq.f_start) << "\n";
    out << "step_hz = " << format_double(scene.freq.f_step) << "\n";
    out << "count = " << scene.freq.count << "\n";

    if (scene.obstacle) {
        const SlabObstacle& slab = *scene.obstacle;
        out << "\n[obstacle]\n";
        out << "y_front_m = " << format_double(slab.y_front) << "\n";
        out << "thickness_m = " << format_double(slab.thickness) << "\n";
        out << "x_extent_m = [" << format_double(slab.x_extent[0]) << ", "
            << format_double(slab.x_extent[1]) << "]\n";
        out << "phase_model = \""
            << (slab.phase_model == SlabPhaseModel::excess ? "excess" : "printed") << "\"\n";
        out << "profile = [\n";
        for (const ProfileSegment& seg : slab.profile) {
            out << "  { x_from_m = " << format_double(seg.x_from)
                << ", x_to_m = " << format_double(seg.x_to)
                << ", eps_re = " << format_double(seg.material.eps_rel.real())
                << ", eps_im = " << format_double(-seg.material.eps_rel.imag()) << " },\n";
        }
        out << "]\n";
    }

    if (scene.target) {
        const TargetPlate& plate = *scene.target;
        out << "\n[target]\n";
        out << "x_extent_m = [" << format_double(plate.x_extent[0]) << ", "
            << format_double(plate.x_extent[1]) << "]\n";
        out << "y_m = " << format_double(plate.y) << "\n";
        out << "eps_re = " << format_double(plate.material.eps_rel.real()) << "\n";
        out << "eps_im = " << format_double(-plate.material.eps_rel.imag()) << "\n";
    }
    return out.str();
}

void save_scene_toml(const std::string& path, const Scene& scene) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << scene_to_toml(scene);
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace mmwsim
