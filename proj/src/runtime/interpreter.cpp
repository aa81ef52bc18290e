#include "acdc/runtime/interpreter.hpp"

#include <algorithm>
#include <limits>

#include "acdc/error.hpp"

namespace acdc::runtime {

std::string_view to_string(FailureKind kind)
{
    switch (kind) {
    case FailureKind::None:
        return "none";
    case FailureKind::WrongOutput:
        return "wrong-output";
    case FailureKind::RuntimeError:
        return "runtime-error";
    case FailureKind::StepLimit:
        return "step-limit";
    }
    return "?";
}

std::string render(const Value& v)
{
    struct Visitor
    {
        std::string operator()(std::monostate) const { return "<undeclared>"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const IntArray& a) const
        {
            std::string out = "[";
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i > 0)
                    out += ", ";
                out += std::to_string(a[i]);
            }
            return out + "]";
        }
    };
    return std::visit(Visitor{}, v);
}

OccurrenceSet OccurrenceSet::all()
{
    OccurrenceSet s;
    s.all_ = true;
    return s;
}

OccurrenceSet OccurrenceSet::of(std::vector<std::int64_t> indices)
{
    OccurrenceSet s;
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    s.indices_ = std::move(indices);
    return s;
}

bool OccurrenceSet::contains(std::int64_t occurrence) const
{
    return all_ || std::binary_search(indices_.begin(), indices_.end(), occurrence);
}

void NegationPlan::validate(const lang::Program& program) const
{
    for (const auto& [p, set] : entries) {
        if (!p.valid() || p.index() >= program.predicates.size())
            throw Error("negation plan references unknown predicate " + std::to_string(p.value));
        if (!set.is_all() && !set.indices().empty() && set.indices().front() < 1)
            throw Error("negation plan occurrence indices must be >= 1");
    }
}

namespace {

struct RuntimeFault
{
    FailureKind kind;
    std::string message;
};

class PlanHook final : public NegationHook
{
  public:
    explicit PlanHook(const NegationPlan& plan) : plan_(plan) {}

    bool should_negate(PredicateId p, std::int64_t occurrence, std::span<const std::int64_t>) override
    {
        auto it = plan_.entries.find(p);
        return it != plan_.entries.end() && it->second.contains(occurrence);
    }

  private:
    const NegationPlan& plan_;
};

struct Frame
{
    const lang::FunctionDecl* fn = nullptr;
    std::vector<Value> slots;
    std::vector<std::int64_t> last_eval; // per function-local statement; 0 = never evaluated
    Value result;
};

// Variable values and call results collected for one predicate evaluation.
struct Capture
{
    const learn::FeatureSchema* schema = nullptr;
    std::vector<std::int64_t> values;
};

class Machine
{
  public:
    Machine(const Executor& ex, const ExecConfig& cfg, NegationHook* hook, ExecutionResult& out)
        : ex_(ex), prog_(ex.program()), cfg_(cfg), hook_(hook), out_(out)
    {
        out_.occurrences.assign(prog_.predicates.size(), 0);
        if (cfg_.record_coverage)
            out_.statement_hits.assign(prog_.statements.size(), 0);
        snapshot_wanted_.assign(prog_.predicates.size(), 0);
        for (PredicateId p : cfg_.snapshot_predicates)
            snapshot_wanted_.at(p.index()) = 1;
    }

    void run(const lang::TestCase& test)
    {
        for (const auto& g : prog_.globals)
            globals_.push_back(initial_global(g));
        const auto& main = prog_.function(prog_.main_function);
        if (main.params.size() != test.args.size())
            throw RuntimeFault{FailureKind::RuntimeError, "main expects " + std::to_string(main.params.size()) +
                                                              " argument(s), test supplies " +
                                                              std::to_string(test.args.size())};
        std::vector<Value> args(test.args.begin(), test.args.end());
        call(prog_.main_function, std::move(args));
    }

    [[nodiscard]] std::int64_t steps() const noexcept { return steps_; }

  private:
    static Value default_value(const lang::Type& t)
    {
        switch (t.kind) {
        case lang::Type::Kind::Int:
            return std::int64_t{0};
        case lang::Type::Kind::Bool:
            return false;
        case lang::Type::Kind::String:
            return std::string();
        case lang::Type::Kind::IntArray:
            return IntArray(static_cast<std::size_t>(t.length), 0);
        case lang::Type::Kind::Void:
            break;
        }
        return std::monostate{};
    }

    static Value initial_global(const lang::GlobalVar& g)
    {
        if (!g.init)
            return default_value(g.type);
        const lang::Expr& e = *g.init;
        switch (e.kind) {
        case lang::Expr::Kind::IntLit:
            return e.int_value;
        case lang::Expr::Kind::BoolLit:
            return e.bool_value;
        case lang::Expr::Kind::StrLit:
            return e.text;
        case lang::Expr::Kind::Unary: {
            std::int64_t v = e.operands[0]->int_value;
            return -v; // literal is non-negative, so this cannot overflow
        }
        default:
            return default_value(g.type);
        }
    }

    Value call(int function, std::vector<Value> args)
    {
        if (++depth_ > cfg_.max_call_depth)
            throw RuntimeFault{FailureKind::RuntimeError, "call depth limit exceeded"};
        const lang::FunctionDecl& fn = prog_.function(function);
        Frame frame;
        frame.fn = &fn;
        frame.slots.resize(fn.locals.size());
        for (std::size_t i = 0; i < args.size(); ++i)
            frame.slots[i] = std::move(args[i]);
        frame.last_eval.assign(static_cast<std::size_t>(fn.statement_count), 0);

        Capture* saved = capture_;
        capture_ = nullptr;
        const bool returned = exec_block(frame, fn.body);
        capture_ = saved;
        --depth_;
        if (!returned && fn.return_type.kind != lang::Type::Kind::Void)
            throw RuntimeFault{FailureKind::RuntimeError, "function '" + fn.name + "' ended without returning a value"};
        return std::move(frame.result);
    }

    // Counts a statement execution and records its dynamic control parent.
    std::int64_t enter(Frame& frame, const lang::Stmt& s)
    {
        if (++steps_ > cfg_.step_budget)
            throw RuntimeFault{FailureKind::StepLimit, "step budget of " + std::to_string(cfg_.step_budget) +
                                                           " exhausted"};
        if (cfg_.record_coverage)
            ++out_.statement_hits[s.id.index()];
        if (cfg_.record_events) {
            // The dynamic parent is the static parent evaluated most recently
            // in this activation.
            const std::int32_t base = frame.fn->first_statement.value;
            StatementId best;
            std::int64_t best_time = 0;
            for (StatementId parent : ex_.cdg().parents(s.id)) {
                const std::int64_t t = frame.last_eval[static_cast<std::size_t>(parent.value - base)];
                if (t > best_time) {
                    best_time = t;
                    best = parent;
                }
            }
            if (best.valid())
                out_.events.push_back({steps_, best, s.id});
        }
        return steps_;
    }

    bool exec_block(Frame& frame, const std::vector<std::unique_ptr<lang::Stmt>>& body)
    {
        for (const auto& s : body) {
            if (exec(frame, *s))
                return true;
        }
        return false;
    }

    // Returns true when a `return` was executed.
    bool exec(Frame& frame, const lang::Stmt& s)
    {
        switch (s.kind) {
        case lang::Stmt::Kind::VarDecl:
            enter(frame, s);
            slot(frame, s.target) = s.value ? eval(frame, *s.value) : default_value(s.decl_type);
            return false;
        case lang::Stmt::Kind::Assign: {
            enter(frame, s);
            if (s.index) {
                const std::int64_t i = as_int(eval(frame, *s.index));
                std::int64_t v = as_int(eval(frame, *s.value));
                element(frame, s.target, i, s.name) = v;
            } else {
                slot(frame, s.target) = eval(frame, *s.value);
            }
            return false;
        }
        case lang::Stmt::Kind::If:
            if (predicate(frame, s))
                return exec_block(frame, s.then_body);
            return exec_block(frame, s.else_body);
        case lang::Stmt::Kind::While:
            while (predicate(frame, s)) {
                if (exec_block(frame, s.then_body))
                    return true;
            }
            return false;
        case lang::Stmt::Kind::Return:
            enter(frame, s);
            if (s.value)
                frame.result = eval(frame, *s.value);
            return true;
        case lang::Stmt::Kind::Print:
            enter(frame, s);
            out_.output += render(eval(frame, *s.value));
            out_.output.push_back('\n');
            return false;
        case lang::Stmt::Kind::Call:
            enter(frame, s);
            eval(frame, *s.value);
            return false;
        }
        return false;
    }

    bool predicate(Frame& frame, const lang::Stmt& s)
    {
        const std::int64_t timestamp = enter(frame, s);
        const PredicateId p = s.predicate;
        const std::int64_t occurrence = ++out_.occurrences[p.index()];
        const bool snapshot = snapshot_wanted_[p.index()] != 0;
        const bool wants_state = snapshot || (hook_ && hook_->wants_state(p));

        Capture cap;
        if (wants_state) {
            cap.schema = &ex_.schema(p);
            cap.values.reserve(cap.schema->size());
            for (const auto& d : cap.schema->features) {
                if (d.source == learn::FeatureDescriptor::Source::Variable)
                    cap.values.push_back(learn::featurize(d.var.scope == lang::VarScope::Global
                                                              ? globals_[static_cast<std::size_t>(d.var.slot)]
                                                              : frame.slots[static_cast<std::size_t>(d.var.slot)]));
                else
                    cap.values.push_back(learn::kUninitialized);
            }
        }
        Capture* saved = capture_;
        capture_ = wants_state ? &cap : nullptr;
        const bool value = as_bool(eval(frame, *s.cond));
        capture_ = saved;

        const bool negate = hook_ != nullptr && hook_->should_negate(p, occurrence, cap.values);
        if (snapshot)
            out_.snapshots.push_back({p, occurrence, cap.values, negate});
        frame.last_eval[static_cast<std::size_t>(s.id.value - frame.fn->first_statement.value)] = timestamp;
        return value != negate;
    }

    void record_call(const lang::Expr& call, const Value& result)
    {
        const auto& features = capture_->schema->features;
        for (std::size_t i = 0; i < features.size(); ++i) {
            const auto& d = features[i];
            if (d.source != learn::FeatureDescriptor::Source::CallResult)
                continue;
            if (std::find(d.calls.begin(), d.calls.end(), &call) == d.calls.end())
                continue;
            if (capture_->values[i] == learn::kUninitialized)
                capture_->values[i] = learn::featurize(result);
            return;
        }
    }

    Value& slot(Frame& frame, lang::VarRef ref)
    {
        if (ref.scope == lang::VarScope::Global)
            return globals_[static_cast<std::size_t>(ref.slot)];
        return frame.slots[static_cast<std::size_t>(ref.slot)];
    }

    std::int64_t& element(Frame& frame, lang::VarRef ref, std::int64_t index, const std::string& name)
    {
        auto& arr = std::get<IntArray>(slot(frame, ref));
        if (index < 0 || index >= static_cast<std::int64_t>(arr.size()))
            throw RuntimeFault{FailureKind::RuntimeError, "index " + std::to_string(index) + " out of bounds for '" +
                                                              name + "' of length " + std::to_string(arr.size())};
        return arr[static_cast<std::size_t>(index)];
    }

    static std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v); }
    static bool as_bool(const Value& v) { return std::get<bool>(v); }

    [[noreturn]] static void overflow() { throw RuntimeFault{FailureKind::RuntimeError, "integer overflow"}; }

    static std::int64_t arith(lang::BinaryOp op, std::int64_t a, std::int64_t b)
    {
        std::int64_t r = 0;
        switch (op) {
        case lang::BinaryOp::Add:
            if (__builtin_add_overflow(a, b, &r))
                overflow();
            return r;
        case lang::BinaryOp::Sub:
            if (__builtin_sub_overflow(a, b, &r))
                overflow();
            return r;
        case lang::BinaryOp::Mul:
            if (__builtin_mul_overflow(a, b, &r))
                overflow();
            return r;
        case lang::BinaryOp::Div:
        case lang::BinaryOp::Mod:
            if (b == 0)
                throw RuntimeFault{FailureKind::RuntimeError, "division by zero"};
            if (a == std::numeric_limits<std::int64_t>::min() && b == -1)
                overflow();
            return op == lang::BinaryOp::Div ? a / b : a % b;
        default:
            return 0;
        }
    }

    Value eval(Frame& frame, const lang::Expr& e)
    {
        switch (e.kind) {
        case lang::Expr::Kind::IntLit:
            return e.int_value;
        case lang::Expr::Kind::BoolLit:
            return e.bool_value;
        case lang::Expr::Kind::StrLit:
            return e.text;
        case lang::Expr::Kind::Var:
            return slot(frame, e.var);
        case lang::Expr::Kind::Index: {
            const std::int64_t i = as_int(eval(frame, *e.operands[0]));
            return element(frame, e.var, i, e.text);
        }
        case lang::Expr::Kind::Unary: {
            Value v = eval(frame, *e.operands[0]);
            if (e.unary == lang::UnaryOp::Not)
                return !as_bool(v);
            const std::int64_t i = as_int(v);
            if (i == std::numeric_limits<std::int64_t>::min())
                overflow();
            return -i;
        }
        case lang::Expr::Kind::Binary:
            return eval_binary(frame, e);
        case lang::Expr::Kind::Call: {
            std::vector<Value> args;
            args.reserve(e.operands.size());
            for (const auto& a : e.operands)
                args.push_back(eval(frame, *a));
            Value result = call(e.callee, std::move(args));
            if (capture_)
                record_call(e, result);
            return result;
        }
        }
        return std::monostate{};
    }

    Value eval_binary(Frame& frame, const lang::Expr& e)
    {
        using lang::BinaryOp;
        if (e.binary == BinaryOp::And) {
            if (!as_bool(eval(frame, *e.operands[0])))
                return false;
            return as_bool(eval(frame, *e.operands[1]));
        }
        if (e.binary == BinaryOp::Or) {
            if (as_bool(eval(frame, *e.operands[0])))
                return true;
            return as_bool(eval(frame, *e.operands[1]));
        }
        Value l = eval(frame, *e.operands[0]);
        Value r = eval(frame, *e.operands[1]);
        switch (e.binary) {
        case BinaryOp::Eq:
            return l == r;
        case BinaryOp::Ne:
            return l != r;
        case BinaryOp::Lt:
            return as_int(l) < as_int(r);
        case BinaryOp::Le:
            return as_int(l) <= as_int(r);
        case BinaryOp::Gt:
            return as_int(l) > as_int(r);
        case BinaryOp::Ge:
            return as_int(l) >= as_int(r);
        default:
            return arith(e.binary, as_int(l), as_int(r));
        }
    }

    const Executor& ex_;
    const lang::Program& prog_;
    const ExecConfig& cfg_;
    NegationHook* hook_;
    ExecutionResult& out_;
    std::vector<Value> globals_;
    std::vector<char> snapshot_wanted_;
    Capture* capture_ = nullptr;
    std::int64_t steps_ = 0;
    int depth_ = 0;
};

} // namespace

Executor::Executor(const lang::Program& program) : program_(&program), cdg_(graphs::build_program_cdg(program))
{
    schemas_.reserve(program.predicates.size());
    for (std::size_t i = 0; i < program.predicates.size(); ++i)
        schemas_.push_back(learn::build_schema(program, PredicateId(static_cast<std::int32_t>(i))));
}

ExecutionResult Executor::execute_with_hook(const lang::TestCase& test, NegationHook* hook,
                                            const ExecConfig& config) const
{
    ExecutionResult result;
    Machine machine(*this, config, hook, result);
    try {
        machine.run(test);
        result.failure_kind = lang::normalize_newlines(result.output) == lang::normalize_newlines(test.expected_output)
                                  ? FailureKind::None
                                  : FailureKind::WrongOutput;
    } catch (const RuntimeFault& fault) {
        result.failure_kind = fault.kind;
        result.error = fault.message;
    }
    result.steps = machine.steps();
    result.verdict = result.failure_kind == FailureKind::None ? lang::Verdict::Pass : lang::Verdict::Fail;
    return result;
}

ExecutionResult Executor::execute(const lang::TestCase& test, const ExecConfig& config) const
{
    return execute_with_hook(test, nullptr, config);
}

ExecutionResult Executor::execute_with_negation(const lang::TestCase& test, const NegationPlan& plan,
                                                const ExecConfig& config) const
{
    plan.validate(*program_);
    if (plan.empty())
        return execute(test, config);
    PlanHook hook(plan);
    return execute_with_hook(test, &hook, config);
}

OccurrenceCounts Executor::count_occurrences(const lang::TestCase& test, const ExecConfig& config) const
{
    ExecConfig plain;
    plain.step_budget = config.step_budget;
    plain.max_call_depth = config.max_call_depth;
    const ExecutionResult r = execute(test, plain);
    OccurrenceCounts out;
    out.completed = r.failure_kind == FailureKind::None || r.failure_kind == FailureKind::WrongOutput;
    out.failure = r.failure_kind;
    for (std::size_t i = 0; i < r.occurrences.size(); ++i)
        if (r.occurrences[i] > 0)
            out.counts.emplace(PredicateId(static_cast<std::int32_t>(i)), r.occurrences[i]);
    return out;
}

ExecutionResult execute(const lang::Program& program, const lang::TestCase& test, const ExecConfig& config)
{
    return Executor(program).execute(test, config);
}

ExecutionResult execute_with_negation(const lang::Program& program, const lang::TestCase& test,
                                      const NegationPlan& plan, const ExecConfig& config)
{
    return Executor(program).execute_with_negation(test, plan, config);
}

OccurrenceCounts count_occurrences(const lang::Program& program, const lang::TestCase& test, const ExecConfig& config)
{
    return Executor(program).count_occurrences(test, config);
}

void run_baseline(const Executor& executor, lang::TestSuite& suite, const ExecConfig& config)
{
    suite.verdicts.clear();
    suite.verdicts.reserve(suite.cases.size());
    for (const auto& tc : suite.cases)
        suite.verdicts.push_back(executor.execute(tc, config).verdict);
}

} // namespace acdc::runtime
