#include "acdc/learn/schema.hpp"

#include <algorithm>
#include <map>

#include "acdc/lang/printer.hpp"

namespace acdc::learn {

std::string_view to_string(FeatureCategory c)
{
    switch (c) {
    case FeatureCategory::UsedInPredicate:
        return "used-in-p";
    case FeatureCategory::FormalParameter:
        return "formal-param";
    case FeatureCategory::LocalOrGlobal:
        return "local-or-global-used-or-defined";
    case FeatureCategory::Reduced:
        return "array-or-string-reduced";
    }
    return "?";
}

std::string_view to_string(Reduction r)
{
    switch (r) {
    case Reduction::Identity:
        return "identity";
    case Reduction::Bool01:
        return "bool01";
    case Reduction::StringDigest:
        return "fnv1a64";
    case Reduction::ArrayFold:
        return "array-fold64";
    }
    return "?";
}

std::vector<std::string> FeatureSchema::names() const
{
    std::vector<std::string> out;
    out.reserve(features.size());
    for (const auto& f : features)
        out.push_back(f.name);
    return out;
}

namespace {

Reduction reduction_for(const lang::Type& t)
{
    switch (t.kind) {
    case lang::Type::Kind::Bool:
        return Reduction::Bool01;
    case lang::Type::Kind::String:
        return Reduction::StringDigest;
    case lang::Type::Kind::IntArray:
        return Reduction::ArrayFold;
    default:
        return Reduction::Identity;
    }
}

class SchemaBuilder
{
  public:
    SchemaBuilder(const lang::Program& program, const lang::FunctionDecl& fn) : program_(program), fn_(fn) {}

    void add_variable(lang::VarRef ref, FeatureCategory category)
    {
        const auto& [name, type] = describe(ref);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) {
            it->second.category = std::min(it->second.category, category);
            return;
        }
        FeatureDescriptor d;
        d.name = name;
        d.category = category;
        d.reduction = reduction_for(type);
        d.var = ref;
        by_name_.emplace(name, std::move(d));
    }

    void add_call(const lang::Expr& call)
    {
        const std::string name = lang::print_expr(call);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) {
            it->second.calls.push_back(&call);
            return;
        }
        FeatureDescriptor d;
        d.name = name;
        d.category = FeatureCategory::UsedInPredicate;
        d.reduction = reduction_for(call.type);
        d.source = FeatureDescriptor::Source::CallResult;
        d.calls.push_back(&call);
        by_name_.emplace(name, std::move(d));
    }

    // Variables and direct call results in the predicate's condition.
    void scan_condition(const lang::Expr& e, bool inside_call)
    {
        switch (e.kind) {
        case lang::Expr::Kind::Var:
        case lang::Expr::Kind::Index:
            add_variable(e.var, FeatureCategory::UsedInPredicate);
            break;
        case lang::Expr::Kind::Call:
            if (!inside_call)
                add_call(e);
            for (const auto& arg : e.operands)
                scan_condition(*arg, true);
            return;
        default:
            break;
        }
        for (const auto& op : e.operands)
            scan_condition(*op, inside_call);
    }

    void scan_function()
    {
        for (const auto& s : fn_.body)
            scan_stmt(*s);
    }

    std::vector<FeatureDescriptor> finish()
    {
        std::vector<FeatureDescriptor> out;
        out.reserve(by_name_.size());
        for (auto& [name, d] : by_name_)
            out.push_back(std::move(d));
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.category != b.category)
                return a.category < b.category;
            return a.name < b.name;
        });
        return out;
    }

  private:
    std::pair<std::string, lang::Type> describe(lang::VarRef ref) const
    {
        if (ref.scope == lang::VarScope::Global) {
            const auto& g = program_.globals.at(static_cast<std::size_t>(ref.slot));
            return {g.name, g.type};
        }
        const auto& l = fn_.locals.at(static_cast<std::size_t>(ref.slot));
        return {l.name, l.type};
    }

    FeatureCategory category_of(lang::VarRef ref) const
    {
        const lang::Type t = describe(ref).second;
        if (t.kind == lang::Type::Kind::IntArray || t.kind == lang::Type::Kind::String)
            return FeatureCategory::Reduced;
        return FeatureCategory::LocalOrGlobal;
    }

    void use(lang::VarRef ref)
    {
        if (ref.slot >= 0)
            add_variable(ref, category_of(ref));
    }

    void scan_expr(const lang::Expr& e)
    {
        if (e.kind == lang::Expr::Kind::Var || e.kind == lang::Expr::Kind::Index)
            use(e.var);
        for (const auto& op : e.operands)
            scan_expr(*op);
    }

    void scan_stmt(const lang::Stmt& s)
    {
        if (s.kind == lang::Stmt::Kind::VarDecl || s.kind == lang::Stmt::Kind::Assign)
            use(s.target);
        for (const auto* e : {s.index.get(), s.value.get(), s.cond.get()})
            if (e)
                scan_expr(*e);
        for (const auto& c : s.then_body)
            scan_stmt(*c);
        for (const auto& c : s.else_body)
            scan_stmt(*c);
    }

    const lang::Program& program_;
    const lang::FunctionDecl& fn_;
    std::map<std::string, FeatureDescriptor> by_name_;
};

std::uint64_t mix64(std::uint64_t x) noexcept
{
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

FeatureSchema build_schema(const lang::Program& program, PredicateId predicate)
{
    const auto& info = program.predicate(predicate);
    const auto& fn = program.function(info.function);
    const auto& stmt = *program.statement(info.statement).node;

    SchemaBuilder builder(program, fn);
    builder.scan_condition(*stmt.cond, false);
    for (std::size_t i = 0; i < fn.params.size(); ++i)
        builder.add_variable({lang::VarScope::Local, static_cast<int>(i)}, FeatureCategory::FormalParameter);
    builder.scan_function();

    FeatureSchema schema;
    schema.predicate = predicate;
    schema.features = builder.finish();
    return schema;
}

std::int64_t reduce_string(std::string_view s) noexcept
{
    return static_cast<std::int64_t>(lang::fnv1a64(s));
}

std::int64_t reduce_array(std::span<const std::int64_t> elements) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL ^ mix64(elements.size());
    for (std::int64_t e : elements) {
        h = (h << 7) | (h >> 57);
        h ^= mix64(static_cast<std::uint64_t>(e));
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::int64_t>(h);
}

std::int64_t featurize(const runtime::Value& value)
{
    struct Visitor
    {
        std::int64_t operator()(std::monostate) const { return kUninitialized; }
        std::int64_t operator()(std::int64_t v) const { return v; }
        std::int64_t operator()(bool b) const { return b ? 1 : 0; }
        std::int64_t operator()(const std::string& s) const { return reduce_string(s); }
        std::int64_t operator()(const runtime::IntArray& a) const { return reduce_array(a); }
    };
    return std::visit(Visitor{}, value);
}

} // namespace acdc::learn
