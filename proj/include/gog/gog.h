#ifndef GOG_GOG_H
#define GOG_GOG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GOG_API __declspec(dllexport)
#else
#define GOG_API __attribute__((visibility("default")))
#endif

/* also the CLI exit codes */
typedef enum gog_status {
    GOG_OK = 0,
    GOG_NEGATIVE = 1,     /* the question was decided and the answer is no */
    GOG_USAGE = 2,        /* bad arguments, parse errors, broken invariants */
    GOG_INCONCLUSIVE = 3  /* the answer depends on a window that was exhausted */
} gog_status;

typedef enum gog_section {
    GOG_GROUPS = 0,
    GOG_GRAPHS = 1,
    GOG_MORPHISMS = 2,
    GOG_PATHS = 3
} gog_section;

typedef struct gog_doc gog_doc;
typedef struct gog_report gog_report;

typedef struct gog_options {
    int radius;         /* product and tree exploration radius */
    long coset_window;  /* bound on representatives of infinite coset spaces */
    int depth;          /* word length bound for conjugacy and double coset searches */
    int k;              /* path length for acylindricity */
    int pointed;        /* equivalence and core relative to the basepoint */
} gog_options;

GOG_API void gog_options_init(gog_options* opt);

GOG_API gog_status gog_doc_parse(const char* text, size_t len, gog_doc** out);
GOG_API gog_status gog_doc_load(const char* path, gog_doc** out);
GOG_API gog_doc* gog_doc_empty(void);
GOG_API void gog_doc_free(gog_doc* doc);
GOG_API size_t gog_doc_count(const gog_doc* doc, gog_section s);
/* NULL when i is out of range; valid until the document changes */
GOG_API const char* gog_doc_name(const gog_doc* doc, gog_section s, size_t i);
/* the document in its JSON form; free with gog_string_free */
GOG_API gog_status gog_doc_emit(const gog_doc* doc, char** out);

/* commands: validate reduce equal image immersion covering equivalent product pullback
   core components intersect conjugate tree acylindrical; args are names in the document */
GOG_API gog_status gog_run(gog_doc* doc, const char* command, const char* const* args, size_t nargs,
                           const gog_options* opt, gog_report** out);
/* BS(m,n) subgroup pair, rank growth over radii 2..opt->radius */
GOG_API gog_status gog_demo_bs(long m, long n, const gog_options* opt, gog_report** out);

GOG_API const char* gog_report_json(const gog_report* r);
/* NULL when the command draws nothing */
GOG_API const char* gog_report_dot(const gog_report* r);
GOG_API void gog_report_free(gog_report* r);

GOG_API void gog_string_free(char* s);

/* thread-local; empty after a successful call */
GOG_API const char* gog_last_error(void);
GOG_API const char* gog_last_error_kind(void);

GOG_API const char* gog_version(void);

#ifdef __cplusplus
}
#endif

#endif
