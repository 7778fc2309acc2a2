#include "instanton/lattice_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "instanton/errors.hpp"

namespace instanton::lattice {

using nlohmann::json;

namespace {

bool all_digits(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rat parse_decimal(const std::string& text)
{
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    const auto dot = s.find('.');
    const std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) || (whole.empty() && frac.empty()))
        throw Error(ErrorKind::InvalidArgument, "malformed rational '" + text + "'");
    Int num(whole.empty() ? "0" : whole);
    Int den = 1;
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rat r(negative ? Int(-num) : num, den);
    r.canonicalize();
    return r;
}

std::vector<Vec> vectors(const json& j, const char* field)
{
    std::vector<Vec> out;
    if (!j.contains(field)) return out;
    for (const auto& row : j.at(field)) {
        Vec v;
        for (const auto& x : row) v.push_back(int_from_json(x));
        out.push_back(std::move(v));
    }
    return out;
}

json vectors_json(const std::vector<Vec>& vs)
{
    json out = json::array();
    for (const auto& v : vs) {
        json row = json::array();
        for (const auto& x : v) row.push_back(to_json(x));
        out.push_back(row);
    }
    return out;
}

}  // namespace

Int int_from_json(const json& j)
{
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::string digits = (!s.empty() && s[0] == '-') ? s.substr(1) : s;
        if (!all_digits(digits)) throw Error(ErrorKind::InvalidArgument, "malformed integer '" + s + "'");
        return Int(s);
    }
    throw Error(ErrorKind::InvalidArgument, "expected an integer");
}

Rat rat_from_json(const json& j)
{
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw Error(ErrorKind::InvalidArgument, "rationals are written as strings");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    const Int num = int_from_json(json(s.substr(0, slash)));
    const Int den = int_from_json(json(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

json to_json(const Int& v)
{
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json to_json(const Rat& v) { return v.get_str(); }

IntMatrix matrix_from_json(const json& j)
{
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j.at(r).size() != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = int_from_json(j.at(r).at(c));
    }
    return m;
}

json to_json(const IntMatrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(row);
    }
    return out;
}

MarkedLattice marked_from_json(const json& j)
{
    MarkedLattice m;
    m.name = j.value("name", "");
    if (j.contains("gram"))
        m.lattice = make_lattice(matrix_from_json(j.at("gram")));
    else
        m.lattice = standard_res_lattice();
    for (const auto& x : j.at("fiber")) m.fiber.push_back(int_from_json(x));
    m.components = vectors(j, "components");
    m.nodal = vectors(j, "nodal");
    m.exceptional = vectors(j, "exceptional");
    m.cone_probes = vectors(j, "cone_probes");
    if (j.contains("periods"))
        for (const auto& p : j.at("periods")) m.periods.push_back({rat_from_json(p.at("re")), rat_from_json(p.at("im"))});
    if (j.contains("ample")) {
        RatVec x;
        for (const auto& v : j.at("ample")) x.push_back(rat_from_json(v));
        m.ample = std::move(x);
    }
    const auto issues = validate(m);
    if (!issues.empty()) throw Error(ErrorKind::InvalidArgument, "fixture '" + m.name + "': " + issues.front());
    return m;
}

json to_json(const MarkedLattice& m)
{
    json j;
    j["name"] = m.name;
    j["gram"] = to_json(m.lattice.gram);
    json fiber = json::array();
    for (const auto& x : m.fiber) fiber.push_back(to_json(x));
    j["fiber"] = fiber;
    j["components"] = vectors_json(m.components);
    j["nodal"] = vectors_json(m.nodal);
    j["exceptional"] = vectors_json(m.exceptional);
    j["cone_probes"] = vectors_json(m.cone_probes);
    json periods = json::array();
    for (const auto& p : m.periods) periods.push_back({{"re", to_json(p.re)}, {"im", to_json(p.im)}});
    j["periods"] = periods;
    if (m.ample) {
        json x = json::array();
        for (const auto& v : *m.ample) x.push_back(to_json(v));
        j["ample"] = x;
    }
    return j;
}

TorelliFixture torelli_fixture_from_json(const json& j)
{
    TorelliFixture f;
    f.name = j.value("name", "");
    f.source = marked_from_json(j.at("source"));
    f.target = marked_from_json(j.at("target"));
    f.mu = matrix_from_json(j.at("mu"));
    f.word_bound = j.value("word_bound", std::size_t{8});
    if (j.contains("expect")) {
        const json& e = j.at("expect");
        f.expected_failure = e.value("failing_condition", "");
        if (e.contains("word")) f.expected_word = e.at("word").get<std::vector<std::size_t>>();
    }
    return f;
}

json to_json(const TorelliFixture& f)
{
    json j;
    j["name"] = f.name;
    j["source"] = to_json(f.source);
    j["target"] = to_json(f.target);
    j["mu"] = to_json(f.mu);
    j["word_bound"] = f.word_bound;
    json expect = json::object();
    if (!f.expected_failure.empty()) expect["failing_condition"] = f.expected_failure;
    if (f.expected_word) expect["word"] = *f.expected_word;
    j["expect"] = expect;
    return j;
}

FixtureDocument load_fixture_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open fixture file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Io, "fixture file " + path + " is not valid JSON: " + e.what());
    }
    FixtureDocument doc;
    if (j.contains("marked"))
        for (const auto& m : j.at("marked")) doc.marked.push_back(marked_from_json(m));
    if (j.contains("torelli"))
        for (const auto& t : j.at("torelli")) doc.torelli.push_back(torelli_fixture_from_json(t));
    return doc;
}

}  // namespace instanton::lattice
