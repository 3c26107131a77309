#include "lambdalin/term.hpp"

#include <algorithm>
#include <cctype>
#include <cassert>
#include <stdexcept>

namespace lambdalin {

namespace {

std::vector<std::string> merge_free(const std::vector<TermPtr>& kids) {
    std::vector<std::string> out;
    for (const auto& k : kids) {
        const auto& f = k->free_vars();
        std::vector<std::string> merged;
        merged.reserve(out.size() + f.size());
        std::set_union(out.begin(), out.end(), f.begin(), f.end(), std::back_inserter(merged));
        out = std::move(merged);
    }
    return out;
}

}  // namespace

Term::Term(TermKind k, std::string name, Scalar factor, std::vector<TermPtr> kids)
    : kind_(k), name_(std::move(name)), factor_(std::move(factor)), kids_(std::move(kids)) {
    free_ = merge_free(kids_);
    if (kind_ == TermKind::Variable) {
        free_ = {name_};
    } else if (kind_ == TermKind::Lambda) {
        auto it = std::lower_bound(free_.begin(), free_.end(), name_);
        if (it != free_.end() && *it == name_) free_.erase(it);
    }
    for (const auto& kid : kids_) size_ += kid->size();
}

// ---------------------------------------------------------------------------
// Comparison.
//
// alpha_cmp ignores binder names: bound variables compare by de Bruijn index
// relative to the environments, free variables by name. Sum addends are
// stored sorted by a name-based order, which is alpha-stable only when no
// addend mentions a variable bound above the sum; in that case both sides are
// re-sorted with the environment in scope before the elementwise walk.
// ---------------------------------------------------------------------------

namespace {

using Env = std::vector<const std::string*>;

int alpha_cmp(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb);

// -1-based index from the innermost binder; -1 if free.
int bound_index(const std::string& name, const Env& env) {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
        if (*env[i] == name) return static_cast<int>(env.size()) - 1 - i;
    return -1;
}

const TermPtr& strip_weight(const TermPtr& t) {
    return t->kind() == TermKind::Scaled ? t->body() : t;
}

// Order used among addends of one sum: weighted and unweighted copies of the
// same underlying term come out adjacent, which both factoring-pair
// enumeration and the normality scan rely on.
int addend_alpha_cmp(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb) {
    if (int c = alpha_cmp(strip_weight(a), strip_weight(b), ea, eb)) return c;
    const bool sa = a->kind() == TermKind::Scaled;
    const bool sb = b->kind() == TermKind::Scaled;
    if (sa != sb) return sa ? 1 : -1;
    if (sa) return a->factor().compare(b->factor());
    return 0;
}

bool mentions_env(const Term& t, const Env& env) {
    const auto& free = t.free_vars();
    for (const auto* name : env)
        if (std::binary_search(free.begin(), free.end(), *name)) return true;
    return false;
}

int sum_alpha_cmp(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb) {
    const auto& xs = a->addends();
    const auto& ys = b->addends();
    if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
    const bool resort = mentions_env(*a, ea) || mentions_env(*b, eb);
    std::vector<TermPtr> xs2, ys2;
    const std::vector<TermPtr>* px = &xs;
    const std::vector<TermPtr>* py = &ys;
    if (resort) {
        xs2 = xs;
        ys2 = ys;
        // Each side of a comparison needs its own binder stack; sharing one
        // would interleave the two pushes below any lambda.
        auto key = [](const Env& env) {
            return [env](const TermPtr& u, const TermPtr& v) {
                Env eu = env, ev = env;
                return addend_alpha_cmp(u, v, eu, ev) < 0;
            };
        };
        std::stable_sort(xs2.begin(), xs2.end(), key(ea));
        std::stable_sort(ys2.begin(), ys2.end(), key(eb));
        px = &xs2;
        py = &ys2;
    }
    for (std::size_t i = 0; i < px->size(); ++i)
        if (int c = addend_alpha_cmp((*px)[i], (*py)[i], ea, eb)) return c;
    return 0;
}

int alpha_cmp(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb) {
    if (a.get() == b.get() && ea.empty() && eb.empty()) return 0;
    if (a->kind() != b->kind())
        return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
    switch (a->kind()) {
        case TermKind::Zero:
            return 0;
        case TermKind::Variable: {
            const int ia = bound_index(a->name(), ea);
            const int ib = bound_index(b->name(), eb);
            if (ia != ib) return ia < ib ? -1 : 1;
            if (ia >= 0) return 0;
            return a->name().compare(b->name()) < 0 ? -1 : (a->name() == b->name() ? 0 : 1);
        }
        case TermKind::Lambda: {
            ea.push_back(&a->name());
            eb.push_back(&b->name());
            int c = alpha_cmp(a->body(), b->body(), ea, eb);
            ea.pop_back();
            eb.pop_back();
            return c;
        }
        case TermKind::Apply: {
            if (int c = alpha_cmp(a->fun(), b->fun(), ea, eb)) return c;
            return alpha_cmp(a->arg(), b->arg(), ea, eb);
        }
        case TermKind::Scaled: {
            if (int c = alpha_cmp(a->body(), b->body(), ea, eb)) return c;
            return a->factor().compare(b->factor());
        }
        case TermKind::Sum:
            return sum_alpha_cmp(a, b, ea, eb);
    }
    return 0;
}

int syntactic_cmp(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind() != b->kind())
        return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
    if (int c = a->name().compare(b->name())) return c < 0 ? -1 : 1;
    if (a->kind() == TermKind::Scaled)
        if (int c = a->factor().compare(b->factor())) return c;
    const auto ka = a->children();
    const auto kb = b->children();
    if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ka.size(); ++i)
        if (int c = syntactic_cmp(ka[i], kb[i])) return c;
    return 0;
}

}  // namespace

int compare(const TermPtr& a, const TermPtr& b) {
    Env ea, eb;
    if (int c = alpha_cmp(a, b, ea, eb)) return c;
    return syntactic_cmp(a, b);
}

bool alpha_ac_equal(const TermPtr& a, const TermPtr& b) {
    Env ea, eb;
    return alpha_cmp(a, b, ea, eb) == 0;
}

bool syntactic_equal(const TermPtr& a, const TermPtr& b) { return syntactic_cmp(a, b) == 0; }

// ---------------------------------------------------------------------------
// Factories.
// ---------------------------------------------------------------------------

namespace {

bool valid_var_name(const std::string& n) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))) return false;
    return std::all_of(n.begin() + 1, n.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

// Bypasses name validation; canonicalization uses it for de Bruijn markers.
TermPtr raw_variable(std::string name) {
    return std::make_shared<Term>(TermKind::Variable, std::move(name), Scalar(),
                                  std::vector<TermPtr>{});
}

TermPtr raw_lambda(std::string binder, TermPtr body) {
    return std::make_shared<Term>(TermKind::Lambda, std::move(binder), Scalar(),
                                  std::vector<TermPtr>{std::move(body)});
}

}  // namespace

TermPtr variable(std::string name) {
    if (!valid_var_name(name)) throw std::invalid_argument("bad variable name '" + name + "'");
    return raw_variable(std::move(name));
}

TermPtr lambda(std::string binder, TermPtr body) {
    if (!valid_var_name(binder)) throw std::invalid_argument("bad binder name '" + binder + "'");
    return raw_lambda(std::move(binder), std::move(body));
}

TermPtr apply(TermPtr fun, TermPtr arg) {
    return std::make_shared<Term>(TermKind::Apply, "", Scalar(),
                                  std::vector<TermPtr>{std::move(fun), std::move(arg)});
}

TermPtr zero_vector() {
    static const TermPtr z =
        std::make_shared<Term>(TermKind::Zero, "", Scalar(), std::vector<TermPtr>{});
    return z;
}

TermPtr scaled(Scalar factor, TermPtr body) {
    return std::make_shared<Term>(TermKind::Scaled, "", std::move(factor),
                                  std::vector<TermPtr>{std::move(body)});
}

TermPtr sum(std::vector<TermPtr> addends) {
    std::vector<TermPtr> flat;
    flat.reserve(addends.size());
    for (auto& t : addends) {
        if (t->kind() == TermKind::Sum) {
            for (const auto& kid : t->addends()) flat.push_back(kid);
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (flat.empty()) return zero_vector();
    if (flat.size() == 1) return flat[0];
    std::stable_sort(flat.begin(), flat.end(), [](const TermPtr& u, const TermPtr& v) {
        Env e1, e2;
        if (int c = addend_alpha_cmp(u, v, e1, e2)) return c < 0;
        return syntactic_cmp(u, v) < 0;
    });
    return std::make_shared<Term>(TermKind::Sum, "", Scalar(), std::move(flat));
}

bool is_base(const TermPtr& t) {
    return t->kind() == TermKind::Lambda || t->kind() == TermKind::Variable;
}

bool is_closed(const TermPtr& t) { return t->closed(); }

std::set<std::string> free_vars(const TermPtr& t) {
    return {t->free_vars().begin(), t->free_vars().end()};
}

// ---------------------------------------------------------------------------
// Substitution.
// ---------------------------------------------------------------------------

namespace {

bool contains_name(const std::vector<std::string>& sorted, const std::string& n) {
    return std::binary_search(sorted.begin(), sorted.end(), n);
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid1,
                       const std::vector<std::string>& avoid2, const std::string& avoid3) {
    std::string candidate = base;
    do {
        candidate += '\'';
    } while (contains_name(avoid1, candidate) || contains_name(avoid2, candidate) ||
             candidate == avoid3);
    return candidate;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement) {
    if (!contains_name(t->free_vars(), name)) return t;
    switch (t->kind()) {
        case TermKind::Variable:
            return replacement;  // free_vars check above guarantees the name matches
        case TermKind::Lambda: {
            // name is free in the body here (checked above), so binder != name.
            if (contains_name(replacement->free_vars(), t->name())) {
                const std::string fresh =
                    fresh_name(t->name(), t->body()->free_vars(), replacement->free_vars(), name);
                TermPtr body = substitute(t->body(), t->name(), variable(fresh));
                return lambda(fresh, substitute(body, name, replacement));
            }
            return lambda(t->name(), substitute(t->body(), name, replacement));
        }
        case TermKind::Apply:
            return apply(substitute(t->fun(), name, replacement),
                         substitute(t->arg(), name, replacement));
        case TermKind::Scaled:
            return scaled(t->factor(), substitute(t->body(), name, replacement));
        case TermKind::Sum: {
            std::vector<TermPtr> kids;
            kids.reserve(t->addends().size());
            for (const auto& kid : t->addends()) kids.push_back(substitute(kid, name, replacement));
            return sum(std::move(kids));
        }
        case TermKind::Zero:
            break;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Canonicalization: erase binder names to de Bruijn markers (re-sorting sums
// in the nameless world fixes a canonical addend order), then rename every
// binder v0, v1, ... in traversal order of the nameless tree.
// ---------------------------------------------------------------------------

namespace {

TermPtr erase_names(const TermPtr& t, Env& env) {
    switch (t->kind()) {
        case TermKind::Variable: {
            const int idx = bound_index(t->name(), env);
            if (idx < 0) return t;
            return raw_variable("#" + std::to_string(idx));
        }
        case TermKind::Lambda: {
            env.push_back(&t->name());
            TermPtr body = erase_names(t->body(), env);
            env.pop_back();
            // Bound occurrences were indexed by distance to the binder, so
            // every level uses the same marker stack; the binder itself
            // becomes anonymous.
            return raw_lambda("#", body);
        }
        case TermKind::Apply:
            return apply(erase_names(t->fun(), env), erase_names(t->arg(), env));
        case TermKind::Scaled:
            return scaled(t->factor(), erase_names(t->body(), env));
        case TermKind::Sum: {
            std::vector<TermPtr> kids;
            kids.reserve(t->addends().size());
            for (const auto& kid : t->addends()) kids.push_back(erase_names(kid, env));
            return sum(std::move(kids));
        }
        default:
            return t;
    }
}

TermPtr rename_canonical(const TermPtr& t, std::vector<std::string>& binders, int& next,
                         const std::vector<std::string>& taken) {
    switch (t->kind()) {
        case TermKind::Variable: {
            if (t->name()[0] != '#') return t;
            const int idx = std::stoi(t->name().substr(1));
            const int pos = static_cast<int>(binders.size()) - 1 - idx;
            if (pos < 0) throw std::logic_error("dangling de Bruijn marker");
            return variable(binders[pos]);
        }
        case TermKind::Lambda: {
            std::string name;
            do {
                name = "v" + std::to_string(next++);
            } while (contains_name(taken, name));
            binders.push_back(name);
            TermPtr body = rename_canonical(t->body(), binders, next, taken);
            binders.pop_back();
            return lambda(std::move(name), body);
        }
        case TermKind::Apply: {
            TermPtr f = rename_canonical(t->fun(), binders, next, taken);
            return apply(std::move(f), rename_canonical(t->arg(), binders, next, taken));
        }
        case TermKind::Scaled:
            return scaled(t->factor(), rename_canonical(t->body(), binders, next, taken));
        case TermKind::Sum: {
            std::vector<TermPtr> kids;
            kids.reserve(t->addends().size());
            for (const auto& kid : t->addends())
                kids.push_back(rename_canonical(kid, binders, next, taken));
            return sum(std::move(kids));
        }
        default:
            return t;
    }
}

}  // namespace

TermPtr canonicalize(const TermPtr& t) {
    Env env;
    TermPtr nameless = erase_names(t, env);
    std::vector<std::string> binders;
    int next = 0;
    return rename_canonical(nameless, binders, next, t->free_vars());
}

}  // namespace lambdalin
