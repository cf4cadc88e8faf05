#include "hnormal/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace hnormal {

namespace {

using ojson = nlohmann::ordered_json;

// --- output ---------------------------------------------------------------

void write_number(std::string& out, double v)
{
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    if (v == 0.0) {
        out += '0';
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

bool flat_array(const ojson& j)
{
    for (const auto& e : j)
        if (e.is_structured() && !(e.is_array() && e.size() == 2 && e[0].is_number()))
            return false;
    return true;
}

void write(std::string& out, const ojson& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case ojson::value_t::number_float:
        write_number(out, j.get<double>());
        return;
    case ojson::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Rows of [re, im] pairs and plain number lists stay on one line.
        const bool inline_row = flat_array(j);
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                out += inline_row ? ", " : ",";
            first = false;
            if (!inline_row)
                out += "\n" + pad_in;
            write(out, e, indent + 1);
        }
        if (!inline_row)
            out += "\n" + pad;
        out += ']';
        return;
    }
    case ojson::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first)
                out += ',';
            first = false;
            out += "\n" + pad_in + ojson(k).dump() + ": ";
            write(out, v, indent + 1);
        }
        out += "\n" + pad + '}';
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

std::string to_text(const ojson& j)
{
    std::string out;
    write(out, j, 0);
    out += '\n';
    return out;
}

ojson complex_json(cplx v) { return ojson::array({v.real(), v.imag()}); }

ojson matrix_json(const CMatrix& m)
{
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson params_json(const InvariantRecord& p)
{
    ojson o = ojson::object();
    const std::pair<const char*, const std::optional<cplx>*> cs[] = {
        {"lambda1", &p.lambda1}, {"lambda2", &p.lambda2}, {"x", &p.x}, {"z", &p.z}, {"z1", &p.z1}, {"z2", &p.z2}};
    for (const auto& [k, v] : cs)
        if (*v)
            o[k] = complex_json(**v);
    const std::pair<const char*, const std::optional<double>*> rs[] = {
        {"r", &p.r},         {"r1", &p.r1},      {"r2", &p.r2},      {"r3", &p.r3},
        {"alpha", &p.alpha}, {"beta", &p.beta}, {"gamma", &p.gamma}};
    for (const auto& [k, v] : rs)
        if (*v)
            o[k] = **v;
    o["sign"] = p.sign;
    return o;
}

ojson error_json(const std::optional<ReportError>& e)
{
    if (!e)
        return nullptr;
    ojson o = ojson::object();
    o["code"] = e->code;
    o["detail"] = e->detail;
    return o;
}

ojson forms_json(const std::vector<ClassifiedBlock>& blocks)
{
    ojson arr = ojson::array();
    for (const auto& b : blocks) {
        ojson o = ojson::object();
        o["family"] = std::string(family_name(b.form.family));
        o["params"] = params_json(b.form.params);
        arr.push_back(std::move(o));
    }
    return arr;
}

// --- input ----------------------------------------------------------------

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }
[[noreturn]] void validation_error(const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); }

std::string at(std::string_view name, std::size_t i, std::size_t j)
{
    return std::string(name) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

cplx parse_complex(const nlohmann::json& e, const std::string& where)
{
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        parse_error(where + " is not a [re, im] pair");
    return {e[0].get<double>(), e[1].get<double>()};
}

CMatrix parse_matrix(const nlohmann::json& j, std::string_view name)
{
    if (!j.is_array())
        parse_error("field \"" + std::string(name) + "\" is not an array of rows");
    const std::size_t n = j.size();
    if (n == 0)
        validation_error("field \"" + std::string(name) + "\" is empty");
    CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array())
            parse_error(std::string(name) + "[" + std::to_string(i) + "] is not an array");
        if (row.size() != n)
            validation_error(std::string(name) + " row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(n));
        for (std::size_t k = 0; k < n; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_complex(row[k], at(name, i, k));
    }
    return m;
}

const nlohmann::json& require(const nlohmann::json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        parse_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

nlohmann::json parse_json(std::string_view text)
{
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        parse_error(std::string("malformed document: ") + e.what());
    }
}

std::string hermitian_context(const CMatrix& h)
{
    double worst = -1.0;
    Eigen::Index wi = 0, wj = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            const double d = std::abs(h(i, j) - std::conj(h(j, i)));
            if (d > worst) {
                worst = d;
                wi = i;
                wj = j;
            }
        }
    return " (largest asymmetry at H[" + std::to_string(wi) + "][" + std::to_string(wj) + "])";
}

std::optional<ErrorCode> code_from_name(std::string_view name)
{
    for (int c = 0; c <= static_cast<int>(ErrorCode::ValidationError); ++c)
        if (to_string(static_cast<ErrorCode>(c)) == name)
            return static_cast<ErrorCode>(c);
    return std::nullopt;
}

double number(const nlohmann::json& j, const char* key)
{
    const auto& v = require(j, key);
    if (v.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number())
        parse_error(std::string("field \"") + key + "\" is not a number");
    return v.get<double>();
}

InvariantRecord parse_params(const nlohmann::json& j)
{
    InvariantRecord p;
    if (!j.is_object())
        parse_error("params is not an object");
    for (auto [key, slot] : {std::pair{"lambda1", &p.lambda1}, {"lambda2", &p.lambda2}, {"x", &p.x}, {"z", &p.z},
                             {"z1", &p.z1}, {"z2", &p.z2}})
        if (j.contains(key))
            *slot = parse_complex(j.at(key), key);
    for (auto [key, slot] : {std::pair{"r", &p.r}, {"r1", &p.r1}, {"r2", &p.r2}, {"r3", &p.r3}, {"alpha", &p.alpha},
                             {"beta", &p.beta}, {"gamma", &p.gamma}})
        if (j.contains(key))
            *slot = number(j, key);
    p.sign = require(j, "sign").get<int>();
    return p;
}

}  // namespace

IndefinitePair parse_input(std::string_view text)
{
    const nlohmann::json j = parse_json(text);
    if (!j.is_object())
        parse_error("document is not an object");
    const CMatrix n = parse_matrix(require(j, "N"), "N");
    const CMatrix h = parse_matrix(require(j, "H"), "H");
    double tol = default_tol;
    if (j.contains("tol")) {
        if (!j["tol"].is_number())
            parse_error("field \"tol\" is not a number");
        tol = j["tol"].get<double>();
    }
    if (n.rows() != h.rows())
        validation_error("N is " + std::to_string(n.rows()) + "x" + std::to_string(n.rows()) + " but H is " +
                         std::to_string(h.rows()) + "x" + std::to_string(h.rows()));
    try {
        return make_indefinite_pair(n, h, tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError)
            throw;
        std::string msg = std::string(to_string(e.code())) + ": " + e.detail();
        if (e.code() == ErrorCode::NotHermitian)
            msg += hermitian_context(h);
        validation_error(msg);
    }
}

std::string serialize_input(const IndefinitePair& pair)
{
    ojson o = ojson::object();
    o["N"] = matrix_json(pair.N);
    o["H"] = matrix_json(pair.H);
    o["tol"] = pair.tol;
    return to_text(o);
}

ReportDocument run_classify(const IndefinitePair& pair)
{
    ReportDocument d;
    d.n = pair.size();
    d.tol = pair.tol;
    try {
        d.signature = signature(pair.H, pair.tol);
        const auto blocks = classify_pair(pair);
        const GlobalCertificate g = compose_certificate(pair, blocks);
        bool ok = true;
        for (const auto& b : blocks) {
            BlockReport r;
            r.family = b.form.family;
            r.params = b.form.params;
            r.n_tilde = b.form.n_tilde;
            r.h_tilde = b.form.h_tilde;
            r.T = b.certificate.T;
            r.residual_similarity = b.certificate.residual_similarity;
            r.residual_congruence = b.certificate.residual_congruence;
            ok = ok && r.residual_similarity <= certificate_tol && r.residual_congruence <= certificate_tol;
            d.blocks.push_back(std::move(r));
        }
        d.residual_similarity = g.residual_similarity;
        d.residual_congruence = g.residual_congruence;
        d.pass = ok && g.residual_similarity <= certificate_tol && g.residual_congruence <= certificate_tol;
    } catch (const Error& e) {
        d.blocks.clear();
        d.pass = false;
        d.error = ReportError{std::string(to_string(e.code())), e.detail()};
    }
    return d;
}

std::string serialize_report(const ReportDocument& doc)
{
    ojson o = ojson::object();
    ojson input = ojson::object();
    input["n"] = doc.n;
    input["signature"] = ojson::object({{"v_minus", doc.signature.v_minus}, {"v_plus", doc.signature.v_plus}});
    o["input"] = std::move(input);
    o["tol"] = doc.tol;
    ojson blocks = ojson::array();
    for (const auto& b : doc.blocks) {
        ojson jb = ojson::object();
        jb["family"] = std::string(family_name(b.family));
        jb["params"] = params_json(b.params);
        jb["N_tilde"] = matrix_json(b.n_tilde);
        jb["H_tilde"] = matrix_json(b.h_tilde);
        jb["T"] = matrix_json(b.T);
        jb["residual_similarity"] = b.residual_similarity;
        jb["residual_congruence"] = b.residual_congruence;
        blocks.push_back(std::move(jb));
    }
    o["blocks"] = std::move(blocks);
    o["residual_similarity"] = doc.residual_similarity;
    o["residual_congruence"] = doc.residual_congruence;
    o["pass"] = doc.pass;
    o["error"] = error_json(doc.error);
    return to_text(o);
}

ReportDocument parse_report(std::string_view text)
{
    const nlohmann::json j = parse_json(text);
    ReportDocument d;
    const auto& input = require(j, "input");
    d.n = require(input, "n").get<Eigen::Index>();
    const auto& sig = require(input, "signature");
    d.signature.v_minus = require(sig, "v_minus").get<int>();
    d.signature.v_plus = require(sig, "v_plus").get<int>();
    d.tol = number(j, "tol");
    for (const auto& jb : require(j, "blocks")) {
        BlockReport b;
        const auto name = require(jb, "family").get<std::string>();
        const auto f = family_from_name(name);
        if (!f)
            parse_error("unknown family \"" + name + "\"");
        b.family = *f;
        b.params = parse_params(require(jb, "params"));
        b.n_tilde = parse_matrix(require(jb, "N_tilde"), "N_tilde");
        b.h_tilde = parse_matrix(require(jb, "H_tilde"), "H_tilde");
        const auto& jt = require(jb, "T");
        CMatrix t(static_cast<Eigen::Index>(jt.size()), jt.empty() ? 0 : static_cast<Eigen::Index>(jt[0].size()));
        for (std::size_t i = 0; i < jt.size(); ++i)
            for (std::size_t k = 0; k < jt[i].size(); ++k)
                t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_complex(jt[i][k], at("T", i, k));
        b.T = std::move(t);
        b.residual_similarity = number(jb, "residual_similarity");
        b.residual_congruence = number(jb, "residual_congruence");
        d.blocks.push_back(std::move(b));
    }
    d.residual_similarity = number(j, "residual_similarity");
    d.residual_congruence = number(j, "residual_congruence");
    d.pass = require(j, "pass").get<bool>();
    const auto& e = require(j, "error");
    if (!e.is_null())
        d.error = ReportError{require(e, "code").get<std::string>(), require(e, "detail").get<std::string>()};
    return d;
}

std::string serialize_sample(FamilyTag family, const IndefinitePair& pair, const InvariantRecord& params)
{
    ojson o = ojson::object();
    o["family"] = std::string(family_name(family));
    o["params"] = params_json(params);
    o["N"] = matrix_json(pair.N);
    o["H"] = matrix_json(pair.H);
    o["tol"] = pair.tol;
    return to_text(o);
}

std::string serialize_equivalence(bool equivalent, const std::vector<ClassifiedBlock>& a, const std::vector<ClassifiedBlock>& b)
{
    ojson o = ojson::object();
    o["equivalent"] = equivalent;
    o["a"] = forms_json(a);
    o["b"] = forms_json(b);
    return to_text(o);
}

std::string serialize_oracle(const std::vector<OracleReport>& runs, const std::optional<ReportError>& failure)
{
    ojson o = ojson::object();
    ojson arr = ojson::array();
    for (const auto& r : runs) {
        ojson jr = ojson::object();
        jr["family"] = std::string(family_name(r.family));
        jr["seed"] = r.seed;
        jr["conjugations"] = r.conjugations;
        jr["max_param_deviation"] = r.max_param_deviation;
        jr["max_residual"] = r.max_residual;
        arr.push_back(std::move(jr));
    }
    o["runs"] = std::move(arr);
    o["pass"] = !failure.has_value();
    o["error"] = error_json(failure);
    return to_text(o);
}

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::NotHermitian:
    case ErrorCode::NearSingular:
    case ErrorCode::BadRange:
        return 2;
    case ErrorCode::OracleFailure:
        return 4;
    default:
        return 3;
    }
}

int exit_code(const ReportDocument& doc)
{
    if (doc.error) {
        const auto code = code_from_name(doc.error->code);
        return code ? exit_code(*code) : 3;
    }
    return doc.pass ? 0 : 3;
}

}  // namespace hnormal
