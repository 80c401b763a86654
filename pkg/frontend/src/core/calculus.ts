// One-sided sequent calculus checker: mirror of the reference implementation,
// including diagnostic codes, messages, and branch bookkeeping.

import { printFormula, printSequent, printTerm } from "./printer";
import {
  Formula,
  NegativeShiftCapture,
  Term,
  constantsOf,
  formulaEquals,
  instantiate,
  neg,
  shift,
  termEquals,
} from "./syntax";

export type Sequent = Formula[];

export const RULE_ORDER = [
  "Basic",
  "AlphaDis",
  "AlphaImp",
  "AlphaCon",
  "BetaCon",
  "BetaImp",
  "BetaDis",
  "GammaExi",
  "GammaUni",
  "DeltaUni",
  "DeltaExi",
  "NegNeg",
  "Ext",
] as const;

export type Rule = (typeof RULE_ORDER)[number];

export const RULE_NAMES = new Set<string>(RULE_ORDER);

const BETA_RULES: ReadonlySet<Rule> = new Set(["BetaCon", "BetaImp", "BetaDis"]);

export function claimedCount(rule: Rule): number {
  if (rule === "Basic") return 0;
  if (BETA_RULES.has(rule)) return 2;
  return 1;
}

export interface Span {
  line: number;
  col: number;
  endLine: number;
  endCol: number;
}

export const UNKNOWN_SPAN: Span = { line: 1, col: 1, endLine: 1, endCol: 1 };

export const point = (line: number, col: number): Span => ({
  line,
  col,
  endLine: line,
  endCol: col,
});

export interface Diagnostic {
  code: string;
  severity: "error" | "warning";
  message: string;
  location: Span;
  expected?: string;
  got?: string;
}

export const error = (
  code: string,
  message: string,
  location: Span,
  extra: { expected?: string; got?: string } = {},
): Diagnostic => ({ code, severity: "error", message, location, ...extra });

export interface RuleApplication {
  rule: Rule;
  claimed: Sequent[];
  location: Span;
}

export interface ProofState {
  openGoals: Array<[number, Sequent]>;
  nextBranchId: number;
  stepsConsumed: number;
  goalsClosed: number;
}

export const initialState = (goal: Formula): ProofState => ({
  openGoals: [[0, [goal]]],
  nextBranchId: 1,
  stepsConsumed: 0,
  goalsClosed: 0,
});

export class StepFailure extends Error {
  constructor(public diagnostics: Diagnostic[]) {
    super(diagnostics[0]?.message ?? "step failed");
  }
}

export function applicableRules(s: Sequent): Set<Rule> {
  if (s.length === 0) throw new Error("no rule applies to an empty sequent");
  const [first, ...tail] = s;
  const out = new Set<Rule>(["Ext"]);
  const negated = neg(first);
  if (tail.some((f) => formulaEquals(f, negated))) out.add("Basic");
  switch (first.kind) {
    case "dis":
      out.add("AlphaDis");
      break;
    case "imp":
      out.add("AlphaImp");
      break;
    case "con":
      out.add("BetaCon");
      break;
    case "exi":
      out.add("GammaExi");
      break;
    case "uni":
      out.add("DeltaUni");
      break;
    case "neg":
      switch (first.body.kind) {
        case "con":
          out.add("AlphaCon");
          break;
        case "imp":
          out.add("BetaImp");
          break;
        case "dis":
          out.add("BetaDis");
          break;
        case "uni":
          out.add("GammaUni");
          break;
        case "exi":
          out.add("DeltaExi");
          break;
        case "neg":
          out.add("NegNeg");
          break;
      }
      break;
  }
  return out;
}

class Mismatch extends Error {}
class Captured extends Error {
  constructor(public culprit: Term) {
    super("captured");
  }
}
class Inconsistent extends Error {
  constructor(
    public first: Term,
    public second: Term,
  ) {
    super("inconsistent");
  }
}

function inferInstantiation(body: Formula, claimed: Formula): Term | null {
  const candidates: Term[] = [];

  const matchTerm = (bt: Term, ct: Term, depth: number): void => {
    if (bt.kind === "bound") {
      if (bt.index === depth) {
        try {
          candidates.push(shift(ct, -depth, 0));
        } catch (e) {
          if (e instanceof NegativeShiftCapture) throw new Captured(ct);
          throw e;
        }
      } else if (bt.index < depth) {
        if (!termEquals(ct, bt)) throw new Mismatch();
      } else {
        if (!termEquals(ct, { kind: "bound", index: bt.index - 1 })) throw new Mismatch();
      }
      return;
    }
    if (ct.kind !== "app" || ct.symbol !== bt.symbol || ct.args.length !== bt.args.length) {
      throw new Mismatch();
    }
    bt.args.forEach((ba, i) => matchTerm(ba, ct.args[i], depth));
  };

  const match = (bf: Formula, cf: Formula, depth: number): void => {
    if (bf.kind !== cf.kind) throw new Mismatch();
    switch (bf.kind) {
      case "pred": {
        const o = cf as Extract<Formula, { kind: "pred" }>;
        if (bf.symbol !== o.symbol || bf.args.length !== o.args.length) throw new Mismatch();
        bf.args.forEach((ba, i) => matchTerm(ba, o.args[i], depth));
        return;
      }
      case "imp":
      case "dis":
      case "con": {
        const o = cf as Extract<Formula, { kind: "imp" }>;
        match(bf.left, o.left, depth);
        match(bf.right, o.right, depth);
        return;
      }
      case "neg":
        match(bf.body, (cf as Extract<Formula, { kind: "neg" }>).body, depth);
        return;
      case "uni":
      case "exi":
        match(bf.body, (cf as Extract<Formula, { kind: "uni" }>).body, depth + 1);
        return;
    }
  };

  match(body, claimed, 0);
  if (candidates.length === 0) return null;
  const first = candidates[0];
  for (const c of candidates.slice(1)) {
    if (!termEquals(c, first)) throw new Inconsistent(first, c);
  }
  return first;
}

function resultMismatch(
  loc: Span,
  expected: Sequent | null,
  got: Sequent,
  detail = "",
): StepFailure {
  let message = "claimed result does not match the rule's computed result";
  if (detail) message += `: ${detail}`;
  const extra: { expected?: string; got?: string } = { got: printSequent(got) };
  if (expected !== null) extra.expected = printSequent(expected);
  return new StepFailure([error("RESULT_MISMATCH", message, loc, extra)]);
}

function notApplicable(loc: Span, rule: Rule, requirement: string, first: Formula): StepFailure {
  return new StepFailure([
    error(
      "NOT_APPLICABLE",
      `${rule} requires the first formula to be ${requirement}; found ${printFormula(first)}`,
      loc,
    ),
  ]);
}

function freshness(loc: Span, message: string): StepFailure {
  return new StepFailure([error("FRESHNESS_VIOLATION", message, loc)]);
}

function checkWitness(loc: Span, t: Term | null, goal: Sequent): void {
  if (t === null) return;
  if (t.kind !== "app" || t.args.length > 0) {
    throw freshness(
      loc,
      `delta witness must be a fresh constant, found compound term ${printTerm(t)}`,
    );
  }
  if (constantsOf(goal).names.has(t.symbol)) {
    throw freshness(loc, `witness constant '${t.symbol}' already occurs in the goal`);
  }
}

function matchQuantifier(
  loc: Span,
  body: Formula,
  claimedFirst: Formula,
  claimed: Sequent,
): Term | null {
  try {
    return inferInstantiation(body, claimedFirst);
  } catch (e) {
    if (e instanceof Captured) {
      throw new StepFailure([
        error(
          "CAPTURED_TERM",
          `instantiation term ${printTerm(e.culprit)} references a binder internal ` +
            `to the quantifier body`,
          loc,
        ),
      ]);
    }
    if (e instanceof Inconsistent) {
      throw new StepFailure([
        error(
          "MATCH_INCONSISTENT",
          `occurrences of the bound variable were instantiated with different terms: ` +
            `${printTerm(e.first)} vs ${printTerm(e.second)}`,
          loc,
        ),
      ]);
    }
    if (e instanceof Mismatch) {
      throw resultMismatch(loc, null, claimed, "no instantiation of the quantifier body matches");
    }
    throw e;
  }
}

const sequentEquals = (a: Sequent, b: Sequent): boolean =>
  a.length === b.length && a.every((f, i) => formulaEquals(f, b[i]));

export function validateStep(state: ProofState, appl: RuleApplication): ProofState {
  const loc = appl.location;
  if (state.openGoals.length === 0) {
    throw new StepFailure([
      error("NO_OPEN_GOALS", `no open goals remain but ${appl.rule} follows`, loc),
    ]);
  }
  const [branchId, goal] = state.openGoals[0];
  const restGoals = state.openGoals.slice(1);

  const expectedN = claimedCount(appl.rule);
  if (appl.claimed.length !== expectedN) {
    throw new StepFailure([
      error(
        "WRONG_BRANCH_COUNT",
        `${appl.rule} expects ${expectedN} result sequent(s), got ${appl.claimed.length}`,
        loc,
      ),
    ]);
  }
  if (goal.length === 0) {
    throw new StepFailure([
      error("NOT_APPLICABLE", `${appl.rule} cannot act on an empty sequent`, loc),
    ]);
  }

  const first = goal[0];
  const tail = goal.slice(1);

  const succeed = (newGoals: Sequent[]): ProofState => {
    if (appl.rule === "Basic") {
      return {
        openGoals: restGoals,
        nextBranchId: state.nextBranchId,
        stepsConsumed: state.stepsConsumed + 1,
        goalsClosed: state.goalsClosed + 1,
      };
    }
    if (BETA_RULES.has(appl.rule)) {
      return {
        openGoals: [
          [state.nextBranchId, newGoals[0]],
          [state.nextBranchId + 1, newGoals[1]],
          ...restGoals,
        ],
        nextBranchId: state.nextBranchId + 2,
        stepsConsumed: state.stepsConsumed + 1,
        goalsClosed: state.goalsClosed,
      };
    }
    return {
      openGoals: [[branchId, newGoals[0]], ...restGoals],
      nextBranchId: state.nextBranchId,
      stepsConsumed: state.stepsConsumed + 1,
      goalsClosed: state.goalsClosed,
    };
  };

  const checkSingle = (expected: Sequent): ProofState => {
    if (!sequentEquals(appl.claimed[0], expected)) {
      throw resultMismatch(loc, expected, appl.claimed[0]);
    }
    return succeed([expected]);
  };

  const checkPair = (left: Sequent, right: Sequent): ProofState => {
    if (!sequentEquals(appl.claimed[0], left)) {
      throw resultMismatch(loc, left, appl.claimed[0], "left branch (first result)");
    }
    if (!sequentEquals(appl.claimed[1], right)) {
      throw resultMismatch(loc, right, appl.claimed[1], "right branch (second result)");
    }
    return succeed([left, right]);
  };

  const checkQuantifier = (body: Formula, wrapNeg: boolean, delta: boolean): ProofState => {
    const claimed0 = appl.claimed[0];
    if (claimed0.length === 0) {
      throw resultMismatch(loc, null, claimed0, "claimed sequent is empty");
    }
    let claimedFirst = claimed0[0];
    if (wrapNeg) {
      if (claimedFirst.kind !== "neg") {
        throw resultMismatch(loc, null, claimed0, "claimed first formula must be a negation");
      }
      claimedFirst = claimedFirst.body;
    }
    const t = matchQuantifier(loc, body, claimedFirst, claimed0);
    if (delta) checkWitness(loc, t, goal);
    if (!sequentEquals(claimed0.slice(1), tail)) {
      const inst = t !== null ? instantiate(body, t) : claimedFirst;
      const head = wrapNeg ? neg(inst) : inst;
      throw resultMismatch(loc, [head, ...tail], claimed0, "side formulas must be kept unchanged");
    }
    return succeed([claimed0]);
  };

  switch (appl.rule) {
    case "Basic": {
      const negated = neg(first);
      if (!tail.some((f) => formulaEquals(f, negated))) {
        throw new StepFailure([
          error(
            "BASIC_NO_MATCH",
            `Basic requires the negation of the first formula ` +
              `(${printFormula(negated)}) to appear in the tail`,
            loc,
          ),
        ]);
      }
      return succeed([]);
    }
    case "AlphaDis":
      if (first.kind !== "dis") throw notApplicable(loc, appl.rule, "a disjunction", first);
      return checkSingle([first.left, first.right, ...tail]);
    case "AlphaImp":
      if (first.kind !== "imp") throw notApplicable(loc, appl.rule, "an implication", first);
      return checkSingle([neg(first.left), first.right, ...tail]);
    case "AlphaCon": {
      if (!(first.kind === "neg" && first.body.kind === "con")) {
        throw notApplicable(loc, appl.rule, "a negated conjunction", first);
      }
      const inner = first.body;
      return checkSingle([neg(inner.left), neg(inner.right), ...tail]);
    }
    case "BetaCon":
      if (first.kind !== "con") throw notApplicable(loc, appl.rule, "a conjunction", first);
      return checkPair([first.left, ...tail], [first.right, ...tail]);
    case "BetaImp": {
      if (!(first.kind === "neg" && first.body.kind === "imp")) {
        throw notApplicable(loc, appl.rule, "a negated implication", first);
      }
      const inner = first.body;
      return checkPair([inner.left, ...tail], [neg(inner.right), ...tail]);
    }
    case "BetaDis": {
      if (!(first.kind === "neg" && first.body.kind === "dis")) {
        throw notApplicable(loc, appl.rule, "a negated disjunction", first);
      }
      const inner = first.body;
      return checkPair([neg(inner.left), ...tail], [neg(inner.right), ...tail]);
    }
    case "NegNeg":
      if (!(first.kind === "neg" && first.body.kind === "neg")) {
        throw notApplicable(loc, appl.rule, "a double negation", first);
      }
      return checkSingle([first.body.body, ...tail]);
    case "GammaExi":
      if (first.kind !== "exi") throw notApplicable(loc, appl.rule, "an existential", first);
      return checkQuantifier(first.body, false, false);
    case "GammaUni":
      if (!(first.kind === "neg" && first.body.kind === "uni")) {
        throw notApplicable(loc, appl.rule, "a negated universal", first);
      }
      return checkQuantifier(first.body.body, true, false);
    case "DeltaUni":
      if (first.kind !== "uni") throw notApplicable(loc, appl.rule, "a universal", first);
      return checkQuantifier(first.body, false, true);
    case "DeltaExi":
      if (!(first.kind === "neg" && first.body.kind === "exi")) {
        throw notApplicable(loc, appl.rule, "a negated existential", first);
      }
      return checkQuantifier(first.body.body, true, true);
    case "Ext": {
      const extra = appl.claimed[0].filter((f) => !goal.some((g) => formulaEquals(g, f)));
      if (extra.length > 0) {
        const listing = Array.from(new Set(extra.map((f) => printFormula(f))))
          .sort()
          .join("; ");
        throw new StepFailure([
          error(
            "EXT_NOT_SUBSET",
            `claimed sequent contains formulas not present in the goal: ${listing}`,
            loc,
          ),
        ]);
      }
      return succeed([appl.claimed[0]]);
    }
  }
}

export interface RunResult {
  state: ProofState;
  stepsValidated: number;
  failure: [number, Diagnostic[]] | null;
}

export function runSteps(state: ProofState, steps: RuleApplication[]): RunResult {
  let current = state;
  for (let i = 0; i < steps.length; i++) {
    try {
      current = validateStep(current, steps[i]);
    } catch (e) {
      if (e instanceof StepFailure) return { state: current, stepsValidated: i, failure: [i, e.diagnostics] };
      throw e;
    }
  }
  return { state: current, stepsValidated: steps.length, failure: null };
}
