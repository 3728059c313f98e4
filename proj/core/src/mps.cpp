#include "gridplan/milp/mps.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan::milp {

namespace {

const char* kObjRow = "OBJ";

std::string num17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::string to_mps(const Problem& p) {
    std::ostringstream os;
    os << "NAME          " << p.name << "\n";
    os << "ROWS\n";
    os << " N  " << kObjRow << "\n";
    for (const auto& c : p.constraints()) {
        char rel = c.relation == Relation::LessEqual ? 'L'
                 : c.relation == Relation::Equal ? 'E'
                                                 : 'G';
        os << " " << rel << "  " << c.name << "\n";
    }

    // Column-wise coefficient map in variable order, rows in problem order.
    std::vector<std::vector<std::pair<int, double>>> bycol(p.num_variables());
    for (int i = 0; i < p.num_constraints(); ++i) {
        std::unordered_map<int, double> merged;
        for (const auto& [j, a] : p.constraint(i).coeffs) merged[j] += a;
        for (const auto& [j, a] : merged) {
            if (a != 0.0) bycol[j].emplace_back(i, a);
        }
    }
    for (auto& col : bycol) std::sort(col.begin(), col.end());

    os << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (int j = 0; j < p.num_variables(); ++j) {
        const auto& v = p.variable(j);
        bool want_int = v.kind == VarKind::Binary;
        if (want_int != in_int) {
            os << "    MARKER" << marker++ << "    'MARKER'    "
               << (want_int ? "'INTORG'" : "'INTEND'") << "\n";
            in_int = want_int;
        }
        if (p.objective_coeff(j) != 0.0)
            os << "    " << v.name << "  " << kObjRow << "  " << num17(p.objective_coeff(j))
               << "\n";
        for (const auto& [i, a] : bycol[j])
            os << "    " << v.name << "  " << p.constraint(i).name << "  " << num17(a) << "\n";
    }
    if (in_int) os << "    MARKER" << marker++ << "    'MARKER'    'INTEND'\n";

    os << "RHS\n";
    if (p.objective_constant() != 0.0)
        os << "    RHS  " << kObjRow << "  " << num17(-p.objective_constant()) << "\n";
    for (const auto& c : p.constraints()) {
        if (c.rhs != 0.0) os << "    RHS  " << c.name << "  " << num17(c.rhs) << "\n";
    }

    os << "BOUNDS\n";
    for (int j = 0; j < p.num_variables(); ++j) {
        const auto& v = p.variable(j);
        if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) {
            os << " BV BND  " << v.name << "\n";
            continue;
        }
        if (v.lower == v.upper) {
            os << " FX BND  " << v.name << "  " << num17(v.lower) << "\n";
            continue;
        }
        if (v.lower == -kInf)
            os << " MI BND  " << v.name << "\n";
        else
            os << " LO BND  " << v.name << "  " << num17(v.lower) << "\n";
        if (v.upper == kInf)
            os << " PL BND  " << v.name << "\n";
        else
            os << " UP BND  " << v.name << "  " << num17(v.upper) << "\n";
    }
    os << "ENDATA\n";
    return os.str();
}

void write_mps(const Problem& p, const std::string& path) {
    write_file_atomic(path, to_mps(p));
}

Problem parse_mps(const std::string& content, const std::string& origin) {
    Problem p;
    std::unordered_map<std::string, int> rows;    // constraint name -> index
    std::unordered_map<std::string, bool> isint;  // integrality from markers
    bool have_obj_row = false;
    std::string obj_name;

    enum class Section { None, Rows, Columns, Rhs, Bounds, Done };
    Section section = Section::None;
    bool int_block = false;

    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '*') continue;
        bool header = line[0] != ' ' && line[0] != '\t';
        auto tok = tokenize(line);
        if (tok.empty()) continue;

        if (header) {
            const std::string& s = tok[0];
            if (s == "NAME") {
                p.name = tok.size() > 1 ? tok[1] : "";
            } else if (s == "OBJSENSE") {
                // consumed below via its data line or inline token
                if (tok.size() > 1 && tok[1] != "MIN" && tok[1] != "MINIMIZE")
                    fail("only minimization OBJSENSE is supported");
                section = Section::None;
            } else if (s == "ROWS") {
                section = Section::Rows;
            } else if (s == "COLUMNS") {
                section = Section::Columns;
            } else if (s == "RHS") {
                section = Section::Rhs;
            } else if (s == "BOUNDS") {
                section = Section::Bounds;
            } else if (s == "ENDATA") {
                section = Section::Done;
                break;
            } else if (s == "MIN" || s == "MINIMIZE") {
                // OBJSENSE payload on its own line
            } else {
                fail("unsupported MPS section '" + s + "'");
            }
            continue;
        }

        switch (section) {
            case Section::Rows: {
                if (tok.size() != 2) fail("ROWS entry needs <type> <name>");
                const std::string& t = tok[0];
                if (t == "N") {
                    if (have_obj_row) fail("multiple objective (N) rows");
                    have_obj_row = true;
                    obj_name = tok[1];
                } else if (t == "L" || t == "G" || t == "E") {
                    Relation rel = t == "L" ? Relation::LessEqual
                                 : t == "G" ? Relation::GreaterEqual
                                            : Relation::Equal;
                    if (rows.count(tok[1])) fail("duplicate row '" + tok[1] + "'");
                    rows[tok[1]] = p.add_constraint(tok[1], rel, 0.0);
                } else {
                    fail("unknown row type '" + t + "'");
                }
                break;
            }
            case Section::Columns: {
                if (tok.size() >= 3 && tok[1] == "'MARKER'") {
                    if (tok[2] == "'INTORG'") int_block = true;
                    else if (tok[2] == "'INTEND'") int_block = false;
                    else fail("unknown marker '" + tok[2] + "'");
                    break;
                }
                if (tok.size() != 3 && tok.size() != 5) fail("COLUMNS entry needs pairs of <row> <value>");
                int j = p.variable_index(tok[0]);
                if (j < 0) {
                    // Integrality fixed later; bounds default [0,inf) or [0,1].
                    j = p.add_variable(tok[0], 0.0, kInf, VarKind::Continuous);
                    isint[tok[0]] = int_block;
                    if (int_block) p.variable(j).upper = 1.0;
                }
                for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                    double val = parse_double(tok[k + 1], origin + " COLUMNS");
                    if (tok[k] == obj_name) {
                        p.add_objective_coeff(j, val);
                    } else {
                        auto it = rows.find(tok[k]);
                        if (it == rows.end()) fail("unknown row '" + tok[k] + "'");
                        p.add_coeff(it->second, j, val);
                    }
                }
                break;
            }
            case Section::Rhs: {
                if (tok.size() != 3 && tok.size() != 5) fail("RHS entry needs pairs of <row> <value>");
                for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                    double val = parse_double(tok[k + 1], origin + " RHS");
                    if (tok[k] == obj_name) {
                        p.set_objective_constant(-val);
                    } else {
                        auto it = rows.find(tok[k]);
                        if (it == rows.end()) fail("unknown row '" + tok[k] + "'");
                        p.constraint(it->second).rhs = val;
                    }
                }
                break;
            }
            case Section::Bounds: {
                if (tok.size() < 3) fail("BOUNDS entry needs <type> <set> <var> [value]");
                const std::string& t = tok[0];
                int j = p.variable_index(tok[2]);
                if (j < 0) fail("bound on unknown variable '" + tok[2] + "'");
                auto& v = p.variable(j);
                auto need_val = [&]() -> double {
                    if (tok.size() < 4) fail("bound type " + t + " needs a value");
                    return parse_double(tok[3], origin + " BOUNDS");
                };
                if (t == "LO") v.lower = need_val();
                else if (t == "UP") v.upper = need_val();
                else if (t == "FX") { double x = need_val(); v.lower = v.upper = x; }
                else if (t == "BV") { v.lower = 0.0; v.upper = 1.0; isint[tok[2]] = true; }
                else if (t == "MI") v.lower = -kInf;
                else if (t == "PL") v.upper = kInf;
                else if (t == "FR") { v.lower = -kInf; v.upper = kInf; }
                else fail("unsupported bound type '" + t + "'");
                break;
            }
            case Section::None:
            case Section::Done:
                fail("data line outside any section");
        }
    }
    if (section != Section::Done) {
        throw ParseError(origin + ": missing ENDATA");
    }
    if (!have_obj_row) throw ParseError(origin + ": no objective (N) row");

    for (int j = 0; j < p.num_variables(); ++j) {
        auto& v = p.variable(j);
        auto it = isint.find(v.name);
        if (it != isint.end() && it->second) {
            if (v.lower < 0.0 || v.upper > 1.0)
                throw ParseError(origin + ": integer variable '" + v.name +
                                 "' is not binary (general integers unsupported)");
            v.kind = VarKind::Binary;
        }
    }
    p.validate_or_throw();
    return p;
}

Problem read_mps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open MPS file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_mps(ss.str(), path);
}

}  // namespace gridplan::milp
