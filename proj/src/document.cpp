#include "ietrel/document.hpp"

#include <cctype>
#include <charconv>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ietrel/error.hpp"

namespace ietrel::io {

namespace {

constexpr std::string_view kFormat = "ietrel/1";

// Characters of a value with whitespace removed, remembering the source column
// of each so errors point into the original line.
class ScalarCursor {
public:
    ScalarCursor(std::string_view text, std::size_t line, std::size_t first_column)
        : line_(line), end_column_(first_column)
    {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(text[i])))
                continue;
            chars_.push_back(text[i]);
            columns_.push_back(first_column + i);
        }
        end_column_ = first_column + text.size();
    }

    bool done() const { return pos_ >= chars_.size(); }
    char peek() const { return done() ? '\0' : chars_[pos_]; }
    void advance() { ++pos_; }

    bool consume(std::string_view token)
    {
        if (chars_.compare(pos_, token.size(), token) != 0)
            return false;
        pos_ += token.size();
        return true;
    }

    [[noreturn]] void fail(const std::string& message) const
    {
        throw ParseError(message, line_, done() ? end_column_ : columns_[pos_]);
    }

    Integer digits()
    {
        const std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
            advance();
        if (pos_ == start)
            fail("expected digits");
        return Integer(chars_.substr(start, pos_ - start));
    }

private:
    std::string chars_;
    std::vector<std::size_t> columns_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t end_column_;
};

std::int64_t parse_root(ScalarCursor& cur, std::int64_t field)
{
    if (!cur.consume("sqrt("))
        cur.fail("expected sqrt(");
    const Integer d = cur.digits();
    if (!cur.consume(")"))
        cur.fail("expected )");
    if (!d.fits_slong_p() || !is_square_free_discriminant(d.get_si()))
        cur.fail("sqrt argument must be a square-free integer >= 2");
    if (d.get_si() != field)
        throw ContextMismatch("sqrt(" + d.get_str() + ") does not belong to the document field " +
                              (field == 0 ? std::string("Q") : "Q(sqrt(" + std::to_string(field) + "))"));
    return d.get_si();
}

QuadExt parse_scalar_at(std::string_view text, std::int64_t field, std::size_t line,
                        std::size_t column)
{
    ScalarCursor cur(text, line, column);
    if (cur.done())
        cur.fail("empty scalar");
    Rational rat(0);
    Rational coef(0);
    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        if (cur.peek() == '+' || cur.peek() == '-') {
            sign = cur.peek() == '-' ? -1 : 1;
            cur.advance();
        } else if (!first) {
            cur.fail("expected + or -");
        }
        first = false;

        if (cur.peek() == 's') {
            parse_root(cur, field);
            coef += sign;
            continue;
        }
        Integer num = cur.digits();
        Integer den = 1;
        if (cur.consume("/")) {
            den = cur.digits();
            if (den == 0)
                cur.fail("zero denominator");
        }
        Rational value(num * sign, den);
        value.canonicalize();
        if (cur.consume("*")) {
            parse_root(cur, field);
            coef += value;
        } else {
            rat += value;
        }
    }
    return QuadExt(rat, coef, field);
}

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

struct Entry {
    std::string value;
    std::size_t line;
    std::size_t column;  ///< column of the first value character
};

class Fields {
public:
    Fields(std::map<std::string, std::vector<Entry>> entries, std::size_t last_line)
        : entries_(std::move(entries)), last_line_(last_line)
    {
    }

    const Entry& required(const std::string& key) const
    {
        const Entry* e = optional(key);
        if (e == nullptr)
            throw ParseError("missing key '" + key + "'", last_line_, 1);
        return *e;
    }

    const Entry* optional(const std::string& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return nullptr;
        used_.insert(key);
        return &it->second.front();
    }

    std::vector<Entry> repeated(const std::string& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return {};
        used_.insert(key);
        return it->second;
    }

    void reject_unused() const
    {
        for (const auto& [key, list] : entries_)
            if (!used_.contains(key))
                throw ParseError("unexpected key '" + key + "'", list.front().line, 1);
    }

    void reject_repeats(const std::set<std::string>& repeatable) const
    {
        for (const auto& [key, list] : entries_)
            if (list.size() > 1 && !repeatable.contains(key))
                throw ParseError("duplicate key '" + key + "'", list[1].line, 1);
    }

private:
    std::map<std::string, std::vector<Entry>> entries_;
    std::size_t last_line_;
    mutable std::set<std::string> used_;
};

std::vector<QuadExt> parse_scalar_list(const Entry& e, std::int64_t field)
{
    std::vector<QuadExt> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = e.value.find(',', start);
        const std::size_t stop = comma == std::string::npos ? e.value.size() : comma;
        out.push_back(parse_scalar_at(std::string_view(e.value).substr(start, stop - start), field,
                                      e.line, e.column + start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::int64_t parse_int(const Entry& e)
{
    std::int64_t out = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw ParseError("expected an integer, got '" + e.value + "'", e.line, e.column);
    return out;
}

std::int64_t parse_field(const Entry& e)
{
    if (e.value == "Q")
        return 0;
    const std::string prefix = "Q(sqrt(";
    if (e.value.rfind(prefix, 0) == 0 && e.value.size() > prefix.size() + 2 &&
        e.value.substr(e.value.size() - 2) == "))") {
        Entry inner{e.value.substr(prefix.size(), e.value.size() - prefix.size() - 2), e.line,
                    e.column + prefix.size()};
        const std::int64_t d = parse_int(inner);
        if (!is_square_free_discriminant(d))
            throw ParseError("field discriminant must be a square-free integer >= 2", e.line,
                             inner.column);
        return d;
    }
    throw ParseError("field must be Q or Q(sqrt(D))", e.line, e.column);
}

Word parse_word_at(std::string_view text, std::size_t line, std::size_t column)
{
    std::vector<Syllable> syllables;
    std::size_t i = 0;
    const auto at = [&](std::size_t pos) { return column + pos; };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t token_start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        const std::string_view token = text.substr(token_start, i - token_start);
        if (token == "e")
            continue;
        Generator gen{};
        if (token[0] == 'a')
            gen = Generator::a;
        else if (token[0] == 'b')
            gen = Generator::b;
        else
            throw ParseError("expected a generator 'a' or 'b'", line, at(token_start));
        std::int64_t exponent = 1;
        if (token.size() > 1) {
            if (token[1] != '^')
                throw ParseError("expected '^' after generator", line, at(token_start + 1));
            const char* first = token.data() + 2;
            const char* last = token.data() + token.size();
            const auto [ptr, ec] = std::from_chars(first, last, exponent);
            if (ec != std::errc() || ptr != last || first == last)
                throw ParseError("malformed exponent", line, at(token_start + 2));
            if (exponent == 0)
                throw ParseError("exponent must be nonzero", line, at(token_start + 2));
        }
        syllables.push_back(Syllable{gen, exponent});
    }
    return Word(syllables);
}

std::string join(const std::vector<QuadExt>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0)
            out += ", ";
        out += format_scalar(values[i]);
    }
    return out;
}

std::string field_name(std::int64_t field)
{
    return field == 0 ? std::string("Q") : "Q(sqrt(" + std::to_string(field) + "))";
}

std::int64_t field_of(const std::vector<QuadExt>& values, std::int64_t acc)
{
    for (const auto& v : values)
        acc = common_discriminant(acc, v.discriminant());
    return acc;
}

} // namespace

QuadExt parse_scalar(std::string_view text, std::int64_t field)
{
    return parse_scalar_at(text, field, 1, 1);
}

std::string format_scalar(const QuadExt& x)
{
    return to_string(x);
}

Word parse_word(std::string_view text)
{
    return parse_word_at(text, 1, 1);
}

std::string format_word(const Word& w)
{
    if (w.empty())
        return "e";
    std::string out;
    for (const auto& s : w.syllables()) {
        if (!out.empty())
            out += ' ';
        out += static_cast<char>(s.generator);
        if (s.exponent != 1)
            out += "^" + std::to_string(s.exponent);
    }
    return out;
}

std::string_view kind_name(const Payload& payload)
{
    constexpr std::string_view names[] = {"scalar", "perm-lambda", "iet",
                                          "rotation", "word", "certificate"};
    return names[payload.index()];
}

std::int64_t payload_field(const Payload& payload, std::int64_t fallback)
{
    struct Visitor {
        std::int64_t acc;
        std::int64_t operator()(const QuadExt& x) const { return common_discriminant(acc, x.discriminant()); }
        std::int64_t operator()(const PermLambdaSpec& s) const { return field_of(s.lengths, acc); }
        std::int64_t operator()(const Iet& f) const
        {
            return field_of(f.shifts(), field_of(f.starts(), acc));
        }
        std::int64_t operator()(const RotationSpec& s) const
        {
            return field_of(s.rates, field_of(s.lengths, acc));
        }
        std::int64_t operator()(const Word&) const { return acc; }
        std::int64_t operator()(const RelationCertificate& c) const
        {
            return c.radius ? common_discriminant(acc, c.radius->discriminant()) : acc;
        }
    };
    return std::visit(Visitor{fallback}, payload);
}

Document parse_document(std::string_view text)
{
    std::map<std::string, std::vector<Entry>> entries;
    std::size_t line_no = 0;
    std::size_t last_content_line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(pos, stop - pos);
        ++line_no;
        pos = stop + 1;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (trim(line).empty()) {
            if (nl == std::string_view::npos)
                break;
            continue;
        }
        last_content_line = line_no;
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("expected 'key: value'", line_no, 1);
        const std::string key = trim(line.substr(0, colon));
        if (key.empty())
            throw ParseError("empty key", line_no, 1);
        std::size_t value_start = colon + 1;
        while (value_start < line.size() &&
               std::isspace(static_cast<unsigned char>(line[value_start])))
            ++value_start;
        entries[key].push_back(
            Entry{trim(line.substr(value_start)), line_no, value_start + 1});
        if (nl == std::string_view::npos)
            break;
    }

    const Fields fields(std::move(entries), last_content_line);
    fields.reject_repeats({"note"});
    const Entry& format = fields.required("format");
    if (format.value != kFormat)
        throw ParseError("unsupported format '" + format.value + "'", format.line, format.column);
    Document doc;
    doc.field = parse_field(fields.required("field"));
    const Entry& kind = fields.required("kind");
    const std::int64_t field = doc.field;

    if (kind.value == "scalar") {
        const Entry& v = fields.required("value");
        doc.payload = parse_scalar_at(v.value, field, v.line, v.column);
    } else if (kind.value == "perm-lambda") {
        PermLambdaSpec spec;
        const Entry& perm = fields.required("permutation");
        std::istringstream in(perm.value);
        std::string tok;
        while (in >> tok)
            spec.permutation.push_back(static_cast<int>(parse_int(Entry{tok, perm.line, perm.column})));
        spec.lengths = parse_scalar_list(fields.required("lengths"), field);
        doc.payload = std::move(spec);
    } else if (kind.value == "iet") {
        const Entry& br = fields.required("breakpoints");
        auto starts = parse_scalar_list(br, field);
        auto shifts = parse_scalar_list(fields.required("translations"), field);
        try {
            doc.payload = Iet::from_pieces(std::move(starts), std::move(shifts));
        } catch (const PreconditionError& e) {
            throw ParseError(e.what(), br.line, br.column);
        }
    } else if (kind.value == "rotation") {
        RotationSpec spec;
        spec.lengths = parse_scalar_list(fields.required("lengths"), field);
        spec.rates = parse_scalar_list(fields.required("rates"), field);
        doc.payload = std::move(spec);
    } else if (kind.value == "word") {
        const Entry& w = fields.required("word");
        doc.payload = parse_word_at(w.value, w.line, w.column);
    } else if (kind.value == "certificate") {
        RelationCertificate cert;
        const Entry& branch = fields.required("branch");
        const auto b = parse_branch(branch.value);
        if (!b)
            throw ParseError("unknown branch '" + branch.value + "'", branch.line, branch.column);
        cert.branch = *b;
        if (const Entry* e = fields.optional("order"))
            cert.order = parse_int(*e);
        if (const Entry* e = fields.optional("fixing-power"))
            cert.fixing_power = parse_int(*e);
        if (const Entry* e = fields.optional("d"))
            cert.separation = parse_int(*e);
        if (const Entry* e = fields.optional("epsilon"))
            cert.radius = parse_scalar_at(e->value, field, e->line, e->column);
        if (const Entry* e = fields.optional("M"))
            cert.rotation_power = parse_int(*e);
        const Entry& verified = fields.required("verified");
        if (verified.value != "true" && verified.value != "false")
            throw ParseError("verified must be true or false", verified.line, verified.column);
        cert.verified = verified.value == "true";
        const Entry& w = fields.required("word");
        cert.word = parse_word_at(w.value, w.line, w.column);
        for (const Entry& note : fields.repeated("note"))
            cert.notes.push_back(note.value);
        doc.payload = std::move(cert);
    } else {
        throw ParseError("unknown kind '" + kind.value + "'", kind.line, kind.column);
    }
    fields.reject_unused();
    return doc;
}

std::string emit_document(const Document& doc)
{
    if (doc.field != 0 && !is_square_free_discriminant(doc.field))
        throw PreconditionError("document field must be Q or Q(sqrt(D)) with square-free D >= 2");
    if (payload_field(doc.payload, doc.field) != doc.field)
        throw ContextMismatch("payload does not belong to the document field");

    std::ostringstream out;
    out << "format: " << kFormat << '\n';
    out << "field: " << field_name(doc.field) << '\n';
    out << "kind: " << kind_name(doc.payload) << '\n';
    struct Visitor {
        std::ostringstream& out;
        void operator()(const QuadExt& x) const { out << "value: " << format_scalar(x) << '\n'; }
        void operator()(const PermLambdaSpec& s) const
        {
            out << "permutation:";
            for (int p : s.permutation)
                out << ' ' << p;
            out << "\nlengths: " << join(s.lengths) << '\n';
        }
        void operator()(const Iet& f) const
        {
            out << "breakpoints: " << join(f.starts()) << '\n';
            out << "translations: " << join(f.shifts()) << '\n';
        }
        void operator()(const RotationSpec& s) const
        {
            out << "lengths: " << join(s.lengths) << '\n';
            out << "rates: " << join(s.rates) << '\n';
        }
        void operator()(const Word& w) const { out << "word: " << format_word(w) << '\n'; }
        void operator()(const RelationCertificate& c) const
        {
            out << "branch: " << branch_name(c.branch) << '\n';
            if (c.order)
                out << "order: " << *c.order << '\n';
            if (c.fixing_power)
                out << "fixing-power: " << *c.fixing_power << '\n';
            if (c.separation)
                out << "d: " << *c.separation << '\n';
            if (c.radius)
                out << "epsilon: " << format_scalar(*c.radius) << '\n';
            if (c.rotation_power)
                out << "M: " << *c.rotation_power << '\n';
            out << "verified: " << (c.verified ? "true" : "false") << '\n';
            out << "word: " << format_word(c.word) << '\n';
            for (const auto& note : c.notes)
                out << "note: " << note << '\n';
        }
    };
    std::visit(Visitor{out}, doc.payload);
    return out.str();
}

std::string discontinuity_growth_csv(const Iet& f, std::int64_t max_n)
{
    std::ostringstream out;
    out << "n,discontinuities,l1_exact,l1_float\n";
    out << std::setprecision(12);
    Iet iterate;
    for (std::int64_t n = 1; n <= max_n; ++n) {
        iterate = compose(iterate, f);
        const QuadExt l1 = iterate.l1_distance_to_identity();
        out << n << ',' << iterate.discontinuities().size() << ',' << format_scalar(l1) << ','
            << to_float(l1) << '\n';
    }
    return out.str();
}

} // namespace ietrel::io
