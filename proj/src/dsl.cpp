#include "mtsim/dsl.hpp"

#include <cctype>
#include <json.hpp>

#include "mtsim/errors.hpp"
#include "mtsim/textutil.hpp"

namespace mtsim::dsl {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return tokens;
}

double require_number(const Token& tok, int line_no, const char* what) {
    double value = 0.0;
    if (!parse_double(tok.text, value))
        throw ParseError(line_no, tok.column,
                         std::string("expected ") + what + ", got '" + tok.text + "'");
    return value;
}

void require_arity(const std::vector<Token>& tokens, int line_no, std::size_t args,
                   const char* usage) {
    if (tokens.size() != args + 1) {
        const int col = tokens.size() > args + 1 ? tokens[args + 1].column
                                                 : tokens[0].column;
        throw ParseError(line_no, col, std::string("expected ") + usage);
    }
}

void parse_line(std::string_view line, int line_no, PulseProgram& program) {
    std::size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
    if (first >= line.size()) return;  // blank line
    if (line[first] == '#') {
        program.statements.push_back(CommentStmt{std::string(line.substr(first + 1))});
        program.lines.push_back(line_no);
        return;
    }

    const auto tokens = tokenize(line);
    const std::string keyword = to_upper(tokens[0].text);
    Statement stmt;
    if (keyword == "PULSE") {
        require_arity(tokens, line_no, 2, "PULSE <volts> <ms>");
        PulseStmt s;
        s.amplitude_v = require_number(tokens[1], line_no, "a voltage");
        s.width_ms = require_number(tokens[2], line_no, "a width in ms");
        if (s.width_ms < 0.0)
            throw ParseError(line_no, tokens[2].column, "pulse width must be >= 0");
        stmt = s;
    } else if (keyword == "SETH") {
        require_arity(tokens, line_no, 1, "SETH <oersted>");
        stmt = SetHStmt{require_number(tokens[1], line_no, "a field in Oe")};
    } else if (keyword == "READ") {
        if (tokens.size() > 2)
            throw ParseError(line_no, tokens[2].column, "expected READ [<label>]");
        stmt = ReadStmt{tokens.size() == 2 ? tokens[1].text : std::string{}};
    } else if (keyword == "INIT") {
        require_arity(tokens, line_no, 1, "INIT <+|->");
        if (tokens[1].text == "+")
            stmt = InitStmt{+1};
        else if (tokens[1].text == "-")
            stmt = InitStmt{-1};
        else
            throw ParseError(line_no, tokens[1].column, "INIT direction must be + or -");
    } else if (keyword == "WAIT") {
        require_arity(tokens, line_no, 1, "WAIT <ms>");
        WaitStmt s{require_number(tokens[1], line_no, "a duration in ms")};
        if (s.duration_ms < 0.0)
            throw ParseError(line_no, tokens[1].column, "wait duration must be >= 0");
        stmt = s;
    } else {
        throw ParseError(line_no, tokens[0].column, "unknown keyword '" + tokens[0].text + "'");
    }
    program.statements.push_back(std::move(stmt));
    program.lines.push_back(line_no);
}

}  // namespace

PulseProgram parse(std::string_view text) {
    PulseProgram program;
    int line_no = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        parse_line(line, line_no, program);
        if (eol == text.size()) break;
        pos = eol + 1;
        ++line_no;
    }
    return program;
}

std::string format(const PulseProgram& program) {
    std::string out;
    for (const Statement& stmt : program.statements) {
        std::visit(
            [&out](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, PulseStmt>) {
                    out += "PULSE " + format_double(s.amplitude_v) + " " +
                           format_double(s.width_ms);
                } else if constexpr (std::is_same_v<T, SetHStmt>) {
                    out += "SETH " + format_double(s.field_oe);
                } else if constexpr (std::is_same_v<T, ReadStmt>) {
                    out += s.label.empty() ? "READ" : "READ " + s.label;
                } else if constexpr (std::is_same_v<T, InitStmt>) {
                    out += s.direction > 0 ? "INIT +" : "INIT -";
                } else if constexpr (std::is_same_v<T, WaitStmt>) {
                    out += "WAIT " + format_double(s.duration_ms);
                } else if constexpr (std::is_same_v<T, CommentStmt>) {
                    out += "#" + s.text;
                }
            },
            stmt);
        out += '\n';
    }
    return out;
}

bool structurally_equal(const PulseProgram& a, const PulseProgram& b) {
    return a.statements == b.statements;
}

std::vector<TraceRecord> execute(const PulseProgram& program, Memtranstor& dev,
                                 const ReadoutConfig& cfg) {
    std::vector<TraceRecord> trace;
    std::uint64_t read_count = 0;
    for (std::size_t i = 0; i < program.statements.size(); ++i) {
        const Statement& stmt = program.statements[i];
        const int line = program.lines[i];
        if (std::holds_alternative<CommentStmt>(stmt)) continue;

        TraceRecord record;
        record.line = line;
        record.statement = stmt;
        try {
            if (const auto* pulse = std::get_if<PulseStmt>(&stmt)) {
                drive_pulse(dev, Pulse{pulse->amplitude_v, pulse->width_ms * 1e-3});
            } else if (const auto* seth = std::get_if<SetHStmt>(&stmt)) {
                drive_h_field(dev, seth->field_oe);
            } else if (const auto* init = std::get_if<InitStmt>(&stmt)) {
                dev.polarization = prepole(init->direction);
            } else if (std::get_if<WaitStmt>(&stmt)) {
                // nonvolatile state: nothing evolves
            } else if (std::get_if<ReadStmt>(&stmt)) {
                ReadoutConfig read_cfg = cfg;
                read_cfg.rng_seed = cfg.rng_seed + read_count++;
                record.read = measure(dev, read_cfg);
            }
        } catch (const SimError& e) {
            throw ExecutionError(line, e.what());
        }
        record.p = dev.polarization.p;
        record.m = dev.magnetization.m;
        record.h_dc_oe = dev.magnetization.h_dc_oe;
        trace.push_back(std::move(record));
    }
    return trace;
}

std::string trace_to_jsonl(std::span<const TraceRecord> trace) {
    std::string out;
    for (const TraceRecord& record : trace) {
        nlohmann::json j;
        j["line"] = record.line;
        std::visit(
            [&j](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, PulseStmt>) {
                    j["op"] = "pulse";
                    j["amplitude_v"] = s.amplitude_v;
                    j["width_ms"] = s.width_ms;
                } else if constexpr (std::is_same_v<T, SetHStmt>) {
                    j["op"] = "seth";
                    j["field_oe"] = s.field_oe;
                } else if constexpr (std::is_same_v<T, ReadStmt>) {
                    j["op"] = "read";
                    if (!s.label.empty()) j["label"] = s.label;
                } else if constexpr (std::is_same_v<T, InitStmt>) {
                    j["op"] = "init";
                    j["direction"] = s.direction;
                } else if constexpr (std::is_same_v<T, WaitStmt>) {
                    j["op"] = "wait";
                    j["duration_ms"] = s.duration_ms;
                }
            },
            record.statement);
        j["p"] = record.p;
        j["m"] = record.m;
        j["h_dc_oe"] = record.h_dc_oe;
        if (record.read) {
            j["x_v"] = record.read->x_v;
            j["y_v"] = record.read->y_v;
            j["alpha_e"] = record.read->alpha_e_measured;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace mtsim::dsl
