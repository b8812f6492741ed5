#include "ietrel/ietrel.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "ietrel/document.hpp"
#include "ietrel/error.hpp"
#include "ietrel/finite_model.hpp"
#include "ietrel/synthesis.hpp"

using namespace ietrel;

struct ietrel_map {
    Iet map;
    std::int64_t field = 0;
};

struct ietrel_rotation {
    RotationSpec spec;
    std::int64_t field = 0;
};

struct ietrel_word {
    Word word;
};

struct ietrel_certificate {
    RelationCertificate cert;
    std::int64_t field = 0;
};

namespace {

thread_local std::string g_last_error;

class NullArgument : public std::exception {
public:
    const char* what() const noexcept override { return "null argument"; }
};

template <class... Ptrs>
void require(const Ptrs*... ptrs)
{
    if (((ptrs == nullptr) || ...))
        throw NullArgument();
}

template <class Fn>
ietrel_status guarded(Fn&& fn)
{
    g_last_error.clear();
    try {
        fn();
        return IETREL_OK;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return IETREL_PARSE_ERROR;
    } catch (const ContextMismatch& e) {
        g_last_error = e.what();
        return IETREL_CONTEXT_MISMATCH;
    } catch (const PreconditionError& e) {
        g_last_error = e.what();
        return IETREL_PRECONDITION_VIOLATED;
    } catch (const SearchCapExceeded& e) {
        g_last_error = e.what();
        return IETREL_SEARCH_CAP_EXCEEDED;
    } catch (const VerificationFailure& e) {
        g_last_error = e.what();
        return IETREL_VERIFICATION_FAILED;
    } catch (const NullArgument& e) {
        g_last_error = e.what();
        return IETREL_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return IETREL_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IETREL_INTERNAL_ERROR;
    }
}

char* duplicate(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class T>
const T& payload_as(const io::Document& doc, const char* expected)
{
    if (const T* p = std::get_if<T>(&doc.payload))
        return *p;
    throw ParseError("expected a " + std::string(expected) + " document, got " +
                         std::string(io::kind_name(doc.payload)),
                     1, 1);
}

Iet actual_rotation(const ietrel_rotation* r, const ietrel_map* conjugator)
{
    const Iet r0 = to_iet(r->spec);
    return conjugator != nullptr ? conjugate(r0, conjugator->map) : r0;
}

std::int64_t merged_field(std::int64_t a, std::int64_t b)
{
    return common_discriminant(a, b);
}

std::string summarize(const finite::CheckReport& report)
{
    std::ostringstream out;
    out << "instances: " << report.instances << '\n';
    out << "failures: " << report.failures << '\n';
    for (const auto& m : report.messages)
        out << "failure: " << m << '\n';
    constexpr const char* names[] = {"A", "B", "C", "outside"};
    for (const auto& [move, situations] : report.moves) {
        out << "move " << names[static_cast<int>(move.first)] << "->"
            << names[static_cast<int>(move.second)] << ':';
        for (const auto& [situation, count] : situations)
            out << ' ' << finite::situation_name(situation) << '=' << count;
        out << '\n';
    }
    return out.str();
}

} // namespace

extern "C" {

const char* ietrel_last_error(void)
{
    return g_last_error.c_str();
}

const char* ietrel_status_name(ietrel_status status)
{
    switch (status) {
    case IETREL_OK: return "ok";
    case IETREL_VERIFICATION_FAILED: return "verification failed";
    case IETREL_PARSE_ERROR: return "parse error";
    case IETREL_CONTEXT_MISMATCH: return "context mismatch";
    case IETREL_PRECONDITION_VIOLATED: return "precondition violated";
    case IETREL_SEARCH_CAP_EXCEEDED: return "search cap exceeded";
    case IETREL_INTERNAL_ERROR: return "internal error";
    case IETREL_INVALID_ARGUMENT: return "invalid argument";
    }
    return "unknown status";
}

void ietrel_string_free(char* s)
{
    std::free(s);
}

ietrel_status ietrel_map_parse(const char* text, ietrel_map** out)
{
    return guarded([&] {
        require(text, out);
        const io::Document doc = io::parse_document(text);
        auto handle = std::make_unique<ietrel_map>();
        handle->field = doc.field;
        if (const auto* f = std::get_if<Iet>(&doc.payload))
            handle->map = *f;
        else if (const auto* spec = std::get_if<PermLambdaSpec>(&doc.payload))
            handle->map = Iet::from_perm_lambda(*spec);
        else if (const auto* rot = std::get_if<RotationSpec>(&doc.payload))
            handle->map = to_iet(*rot);
        else
            throw ParseError("expected an iet, perm-lambda or rotation document, got " +
                                 std::string(io::kind_name(doc.payload)),
                             1, 1);
        *out = handle.release();
    });
}

ietrel_status ietrel_map_emit(const ietrel_map* map, char** out)
{
    return guarded([&] {
        require(map, out);
        *out = duplicate(io::emit_document({map->field, map->map}));
    });
}

void ietrel_map_free(ietrel_map* map)
{
    delete map;
}

ietrel_status ietrel_map_compose(const ietrel_map* f, const ietrel_map* g, ietrel_map** out)
{
    return guarded([&] {
        require(f, g, out);
        const std::int64_t field = merged_field(f->field, g->field);
        *out = new ietrel_map{compose(f->map, g->map), field};
    });
}

ietrel_status ietrel_map_inverse(const ietrel_map* f, ietrel_map** out)
{
    return guarded([&] {
        require(f, out);
        *out = new ietrel_map{inverse(f->map), f->field};
    });
}

ietrel_status ietrel_map_power(const ietrel_map* f, int64_t m, ietrel_map** out)
{
    return guarded([&] {
        require(f, out);
        *out = new ietrel_map{power(f->map, m), f->field};
    });
}

ietrel_status ietrel_map_is_identity(const ietrel_map* f, int* out)
{
    return guarded([&] {
        require(f, out);
        *out = f->map.is_identity() ? 1 : 0;
    });
}

ietrel_status ietrel_map_discontinuity_count(const ietrel_map* f, size_t* out)
{
    return guarded([&] {
        require(f, out);
        *out = f->map.discontinuities().size();
    });
}

ietrel_status ietrel_map_apply(const ietrel_map* f, const char* x, char** out)
{
    return guarded([&] {
        require(f, x, out);
        *out = duplicate(io::format_scalar(f->map(io::parse_scalar(x, f->field))));
    });
}

ietrel_status ietrel_map_orbit(const ietrel_map* f, const char* x, int64_t steps, char** out)
{
    return guarded([&] {
        require(f, x, out);
        if (steps < 0)
            throw PreconditionError("orbit length must be nonnegative");
        std::string text;
        for (const auto& p : orbit(f->map, io::parse_scalar(x, f->field),
                                   static_cast<std::size_t>(steps)))
            text += io::format_scalar(p) + '\n';
        *out = duplicate(text);
    });
}

ietrel_status ietrel_map_l1(const ietrel_map* f, char** exact, double* approx)
{
    return guarded([&] {
        require(f, exact, approx);
        const QuadExt l1 = f->map.l1_distance_to_identity();
        *approx = to_float(l1);
        *exact = duplicate(io::format_scalar(l1));
    });
}

ietrel_status ietrel_map_disc_growth(const ietrel_map* f, int64_t max_n, char** csv)
{
    return guarded([&] {
        require(f, csv);
        if (max_n < 0)
            throw PreconditionError("max-n must be nonnegative");
        *csv = duplicate(io::discontinuity_growth_csv(f->map, max_n));
    });
}

ietrel_status ietrel_rotation_parse(const char* text, ietrel_rotation** out)
{
    return guarded([&] {
        require(text, out);
        const io::Document doc = io::parse_document(text);
        RotationSpec spec = payload_as<RotationSpec>(doc, "rotation");
        spec.validate();
        *out = new ietrel_rotation{std::move(spec), doc.field};
    });
}

ietrel_status ietrel_rotation_emit(const ietrel_rotation* r, char** out)
{
    return guarded([&] {
        require(r, out);
        *out = duplicate(io::emit_document({r->field, r->spec}));
    });
}

void ietrel_rotation_free(ietrel_rotation* r)
{
    delete r;
}

ietrel_status ietrel_rotation_to_map(const ietrel_rotation* r, ietrel_map** out)
{
    return guarded([&] {
        require(r, out);
        *out = new ietrel_map{to_iet(r->spec), r->field};
    });
}

ietrel_status ietrel_word_parse(const char* text, ietrel_word** out)
{
    return guarded([&] {
        require(text, out);
        const std::string_view view(text);
        if (view.find("format:") == std::string_view::npos) {
            *out = new ietrel_word{io::parse_word(view)};
            return;
        }
        const io::Document doc = io::parse_document(view);
        if (const auto* w = std::get_if<Word>(&doc.payload))
            *out = new ietrel_word{*w};
        else if (const auto* c = std::get_if<RelationCertificate>(&doc.payload))
            *out = new ietrel_word{c->word};
        else
            throw ParseError("expected a word or certificate document", 1, 1);
    });
}

ietrel_status ietrel_word_emit(const ietrel_word* w, char** out)
{
    return guarded([&] {
        require(w, out);
        *out = duplicate(io::format_word(w->word));
    });
}

void ietrel_word_free(ietrel_word* w)
{
    delete w;
}

ietrel_status ietrel_word_is_trivial(const ietrel_word* w, int* out)
{
    return guarded([&] {
        require(w, out);
        *out = w->word.empty() ? 1 : 0;
    });
}

ietrel_status ietrel_word_eval(const ietrel_word* w, const ietrel_rotation* r,
                               const ietrel_map* g, const ietrel_map* conjugator, ietrel_map** out)
{
    return guarded([&] {
        require(w, r, g, out);
        std::int64_t field = merged_field(r->field, g->field);
        if (conjugator != nullptr)
            field = merged_field(field, conjugator->field);
        *out = new ietrel_map{eval_word(w->word, actual_rotation(r, conjugator), g->map), field};
    });
}

ietrel_status ietrel_synthesize(const ietrel_rotation* r, const ietrel_map* g,
                                const ietrel_map* conjugator, int64_t m_cap,
                                ietrel_certificate** out)
{
    return guarded([&] {
        require(r, g, out);
        std::int64_t field = merged_field(r->field, g->field);
        std::optional<Iet> conj;
        if (conjugator != nullptr) {
            field = merged_field(field, conjugator->field);
            conj = conjugator->map;
        }
        SynthesisOptions options;
        if (m_cap > 0)
            options.m_cap = m_cap;
        SynthesisResult result = synthesize(r->spec, g->map, conj, options);
        if (!result.certificate.verified)
            throw VerificationFailure("certificate failed verification");
        *out = new ietrel_certificate{std::move(result.certificate), field};
    });
}

ietrel_status ietrel_certificate_parse(const char* text, ietrel_certificate** out)
{
    return guarded([&] {
        require(text, out);
        const io::Document doc = io::parse_document(text);
        *out = new ietrel_certificate{payload_as<RelationCertificate>(doc, "certificate"),
                                      doc.field};
    });
}

ietrel_status ietrel_certificate_emit(const ietrel_certificate* c, char** out)
{
    return guarded([&] {
        require(c, out);
        *out = duplicate(io::emit_document({c->field, c->cert}));
    });
}

void ietrel_certificate_free(ietrel_certificate* c)
{
    delete c;
}

ietrel_status ietrel_certificate_word(const ietrel_certificate* c, ietrel_word** out)
{
    return guarded([&] {
        require(c, out);
        *out = new ietrel_word{c->cert.word};
    });
}

ietrel_status ietrel_certificate_is_verified(const ietrel_certificate* c, int* out)
{
    return guarded([&] {
        require(c, out);
        *out = c->cert.verified ? 1 : 0;
    });
}

ietrel_status ietrel_verify(const ietrel_word* w, const ietrel_rotation* r, const ietrel_map* g,
                            const ietrel_map* conjugator, int* holds)
{
    return guarded([&] {
        require(w, r, g, holds);
        merged_field(r->field, g->field);
        if (conjugator != nullptr)
            merged_field(merged_field(r->field, g->field), conjugator->field);
        *holds = 0;
        if (w->word.empty())
            return;
        const Iet value = eval_word_naive(w->word, actual_rotation(r, conjugator), g->map);
        *holds = value.is_identity() ? 1 : 0;
    });
}

ietrel_status ietrel_prop_check_exhaustive(size_t size, int* passed, char** report)
{
    return guarded([&] {
        require(passed, report);
        if (size == 0 || size > 7)
            throw PreconditionError("exhaustive checks support sizes 1..7");
        const auto result = finite::check_exhaustive(size);
        *passed = result.passed() ? 1 : 0;
        *report = duplicate(summarize(result));
    });
}

ietrel_status ietrel_prop_check_random(size_t max_size, size_t trials, uint64_t seed, int* passed,
                                       char** report)
{
    return guarded([&] {
        require(passed, report);
        const auto result = finite::check_random(max_size, trials, seed);
        *passed = result.passed() ? 1 : 0;
        *report = duplicate(summarize(result));
    });
}

} // extern "C"
