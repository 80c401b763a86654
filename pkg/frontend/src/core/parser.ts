// Surface grammar for .sqc scripts: a faithful port of the reference parser,
// including recovery behavior, diagnostic codes, messages, and spans.

import {
  Diagnostic,
  RULE_NAMES,
  RULE_ORDER,
  Rule,
  RuleApplication,
  Sequent,
  Span,
  claimedCount,
  error,
  point,
} from "./calculus";
import {
  Formula,
  Term,
  app,
  bound,
  con,
  dis,
  exi,
  imp,
  neg,
  pred,
  uni,
} from "./syntax";

export interface ProofScript {
  goal: Formula;
  steps: RuleApplication[];
  trailing: string | null;
}

export interface ParseOutcome {
  script: ProofScript | null;
  diagnostics: Diagnostic[];
  recovered: boolean;
}

const UNICODE_OPS: Record<string, string> = {
  "→": "->",
  "↔": "<->",
  "∨": "|",
  "∧": "&",
  "¬": "~",
  "∀": "forall",
  "∃": "exists",
};
const KEYWORDS = new Set(["forall", "exists"]);

interface Token {
  kind: string;
  text: string;
  span: Span;
}

class Fail extends Error {
  constructor(public diagnostic: Diagnostic) {
    super(diagnostic.message);
  }
}

function stripComment(line: string): string {
  const cut = line.indexOf("#");
  return cut < 0 ? line : line.slice(0, cut);
}

interface Segment {
  line: number;
  col0: number;
  text: string;
}

const isAlpha = (c: string) => /[A-Za-z]/.test(c);
const isAlnum = (c: string) => /[A-Za-z0-9]/.test(c);

function lex(segments: Segment[]): Token[] {
  const tokens: Token[] = [];
  for (const { line, col0, text } of segments) {
    let i = 0;
    while (i < text.length) {
      const c = text[i];
      const col = col0 + i;
      if (c === " " || c === "\t" || c === "\r") {
        i += 1;
        continue;
      }
      if ("(),.".includes(c)) {
        tokens.push({ kind: c, text: c, span: { line, col, endLine: line, endCol: col } });
        i += 1;
        continue;
      }
      if (text.startsWith("<->", i)) {
        tokens.push({ kind: "<->", text: "<->", span: { line, col, endLine: line, endCol: col + 2 } });
        i += 3;
        continue;
      }
      if (text.startsWith("->", i)) {
        tokens.push({ kind: "->", text: "->", span: { line, col, endLine: line, endCol: col + 1 } });
        i += 2;
        continue;
      }
      if ("|&~".includes(c)) {
        tokens.push({ kind: c, text: c, span: { line, col, endLine: line, endCol: col } });
        i += 1;
        continue;
      }
      if (c in UNICODE_OPS) {
        tokens.push({ kind: UNICODE_OPS[c], text: c, span: { line, col, endLine: line, endCol: col } });
        i += 1;
        continue;
      }
      if (isAlpha(c)) {
        let j = i + 1;
        while (j < text.length && (isAlnum(text[j]) || text[j] === "_")) j += 1;
        const word = text.slice(i, j);
        const kind = KEYWORDS.has(word) ? word : "ident";
        tokens.push({ kind, text: word, span: { line, col, endLine: line, endCol: col0 + j - 1 } });
        i = j;
        continue;
      }
      throw new Fail(error("SYNTAX", `unexpected character '${c}'`, point(line, col)));
    }
  }
  let end: Span;
  if (segments.length > 0) {
    const last = segments[segments.length - 1];
    end = point(last.line, last.col0 + last.text.length);
  } else {
    end = point(1, 1);
  }
  tokens.push({ kind: "eof", text: "", span: end });
  return tokens;
}

export class SymbolTable {
  private arities = new Map<string, number>();

  record(kind: string, name: string, arity: number, span: Span): void {
    const key = `${kind}:${name}`;
    const seen = this.arities.get(key);
    if (seen === undefined) {
      this.arities.set(key, arity);
    } else if (seen !== arity) {
      throw new Fail(
        error(
          "ARITY_MISMATCH",
          `${kind} symbol '${name}' used with arity ${arity} but previously with arity ${seen}`,
          span,
        ),
      );
    }
  }
}

class FormulaParser {
  private i = 0;
  private scope: string[] = [];

  constructor(
    private tokens: Token[],
    private symbols: SymbolTable,
  ) {}

  peek(): Token {
    return this.tokens[this.i];
  }

  take(): Token {
    return this.tokens[this.i++];
  }

  fail(what: string): Fail {
    const tok = this.peek();
    if (tok.kind === "eof") {
      return new Fail(error("SYNTAX", `unexpected end of input: expected ${what}`, tok.span));
    }
    return new Fail(error("SYNTAX", `expected ${what}, found '${tok.text}'`, tok.span));
  }

  expect(kind: string, what: string): Token {
    if (this.peek().kind !== kind) throw this.fail(what);
    return this.take();
  }

  formula(): Formula {
    const left = this.orf();
    const tok = this.peek();
    if (tok.kind === "->") {
      this.take();
      return imp(left, this.formula());
    }
    if (tok.kind === "<->") {
      this.take();
      const right = this.orf();
      return con(imp(left, right), imp(right, left));
    }
    return left;
  }

  orf(): Formula {
    let left = this.andf();
    while (this.peek().kind === "|") {
      this.take();
      left = dis(left, this.andf());
    }
    return left;
  }

  andf(): Formula {
    let left = this.negf();
    while (this.peek().kind === "&") {
      this.take();
      left = con(left, this.negf());
    }
    return left;
  }

  negf(): Formula {
    if (this.peek().kind === "~") {
      this.take();
      return neg(this.negf());
    }
    return this.atomf();
  }

  atomf(): Formula {
    const tok = this.peek();
    if (tok.kind === "(") {
      this.take();
      const inner = this.formula();
      this.expect(")", "')'");
      return inner;
    }
    if (KEYWORDS.has(tok.kind)) return this.quant();
    if (tok.kind === "ident") return this.pred();
    throw this.fail("a formula (identifier, '(', '~', 'forall', 'exists')");
  }

  quant(): Formula {
    const word = this.take();
    const name = this.expect("ident", "a variable name").text;
    this.expect(".", "'.'");
    this.scope.push(name);
    let body: Formula;
    try {
      body = this.formula();
    } finally {
      this.scope.pop();
    }
    return word.kind === "forall" ? uni(body, name) : exi(body, name);
  }

  pred(): Formula {
    const tok = this.take();
    const args = this.arguments_();
    this.symbols.record("predicate", tok.text, args.length, tok.span);
    return pred(tok.text, args);
  }

  term(): Term {
    const tok = this.expect("ident", "a term (identifier)");
    if (this.peek().kind === "(") {
      const args = this.arguments_();
      this.symbols.record("function", tok.text, args.length, tok.span);
      return app(tok.text, args);
    }
    for (let distance = 0; distance < this.scope.length; distance++) {
      if (this.scope[this.scope.length - 1 - distance] === tok.text) {
        return bound(distance);
      }
    }
    this.symbols.record("function", tok.text, 0, tok.span);
    return app(tok.text, []);
  }

  arguments_(): Term[] {
    if (this.peek().kind !== "(") return [];
    this.take();
    const args = [this.term()];
    while (this.peek().kind === ",") {
      this.take();
      args.push(this.term());
    }
    this.expect(")", "')' or ','");
    return args;
  }
}

function parseFormulaSegments(segments: Segment[], symbols: SymbolTable): Formula {
  const parser = new FormulaParser(lex(segments), symbols);
  const result = parser.formula();
  if (parser.peek().kind !== "eof") throw parser.fail("end of formula");
  return result;
}

export class FormulaError extends Error {
  constructor(public diagnostics: Diagnostic[]) {
    super(diagnostics[0]?.message ?? "parse error");
  }
}

export function parseFormula(text: string, symbols?: SymbolTable): Formula {
  if (text.startsWith("﻿")) text = text.slice(1);
  const segments = text
    .split("\n")
    .map((line, i) => ({ line: i + 1, col0: 1, text: stripComment(line) }));
  try {
    return parseFormulaSegments(segments, symbols ?? new SymbolTable());
  } catch (e) {
    if (e instanceof Fail) throw new FormulaError([e.diagnostic]);
    throw e;
  }
}

function levenshtein(a: string, b: string): number {
  let prev = Array.from({ length: b.length + 1 }, (_, j) => j);
  for (let i = 1; i <= a.length; i++) {
    const cur = [i];
    for (let j = 1; j <= b.length; j++) {
      cur.push(
        Math.min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] === b[j - 1] ? 0 : 1)),
      );
    }
    prev = cur;
  }
  return prev[b.length];
}

export function nearestRuleName(word: string): string | null {
  let bestName: string | null = null;
  let bestDist = 4;
  for (const rule of RULE_ORDER) {
    const dist = levenshtein(word, rule);
    if (dist < bestDist) {
      bestName = rule;
      bestDist = dist;
    }
  }
  return bestName;
}

const BLANK = 0;
const TOP = 1;
const INDENTED = 2;
const PLUS = 3;
const BADINDENT = 4;

function classify(content: string): [number, string, number] {
  const stripped = content.trim();
  if (!stripped) return [BLANK, "", 0];
  if (stripped === "+") return [PLUS, "+", 0];
  const indent = content.length - content.replace(/^ +/, "").length;
  if (indent >= 2) return [INDENTED, content, indent];
  if (indent > 0 || content.startsWith("\t")) return [BADINDENT, stripped, indent];
  return [TOP, stripped, 0];
}

export function parseScript(text: string): ParseOutcome {
  if (text.startsWith("﻿")) text = text.slice(1);
  const rawLines = text.split("\n");
  const contents = rawLines.map((line) => stripComment(line.replace(/\r+$/, "")));
  const classes = contents.map(classify);
  const n = rawLines.length;

  const diagnostics: Diagnostic[] = [];
  let recovered = false;
  let trailing: string | null = null;
  const symbols = new SymbolTable();

  const isRuleLine = (idx: number): boolean => {
    const [cls, word] = classes[idx];
    return cls === TOP && RULE_NAMES.has(word);
  };

  const resync = (start: number): number => {
    recovered = true;
    let j = start;
    while (j < n && !isRuleLine(j)) j += 1;
    if (j >= n) {
      const remainder = rawLines.slice(start).join("\n").replace(/^\n+|\n+$/g, "");
      if (remainder.trim()) trailing = remainder;
    }
    return j;
  };

  let i = 0;
  while (i < n && classes[i][0] === BLANK) i += 1;
  const goalSegments: Segment[] = [];
  while (i < n && classes[i][0] !== BLANK && !isRuleLine(i)) {
    goalSegments.push({ line: i + 1, col0: 1, text: contents[i] });
    i += 1;
  }
  if (goalSegments.length === 0) {
    diagnostics.push(error("GOAL_MISSING", "expected a goal formula", point(1, 1)));
    return { script: null, diagnostics, recovered };
  }
  let goal: Formula;
  try {
    goal = parseFormulaSegments(goalSegments, symbols);
  } catch (e) {
    if (!(e instanceof Fail)) throw e;
    diagnostics.push(e.diagnostic);
    return { script: null, diagnostics, recovered };
  }

  const steps: RuleApplication[] = [];

  const collectBlock = (start: number, rule: Rule): [Sequent | null, number] => {
    let j = start;
    const formulas: Formula[] = [];
    while (j < n && classes[j][0] === INDENTED) {
      const [, content, indent] = classes[j];
      try {
        formulas.push(
          parseFormulaSegments(
            [{ line: j + 1, col0: indent + 1, text: content.slice(indent) }],
            symbols,
          ),
        );
      } catch (e) {
        if (!(e instanceof Fail)) throw e;
        diagnostics.push(e.diagnostic);
        return [null, j];
      }
      j += 1;
    }
    if (formulas.length === 0) {
      if (j < n && classes[j][0] === BADINDENT) {
        diagnostics.push(
          error(
            "MISSING_RESULT",
            "result lines must be indented by at least two spaces",
            point(j + 1, 1),
          ),
        );
      } else {
        diagnostics.push(
          error(
            "MISSING_RESULT",
            `rule ${rule} expects a result sequent ` +
              `(one formula per line, indented by two spaces)`,
            point(Math.min(j, n - 1) + 1, 1),
          ),
        );
      }
      return [null, j];
    }
    return [formulas, j];
  };

  while (i < n) {
    const [cls, word] = classes[i];
    if (cls === BLANK) {
      i += 1;
      continue;
    }
    if (cls !== TOP) {
      let message: string;
      if (cls === PLUS) {
        message = "unexpected '+' outside a two-branch result";
      } else if (cls === BADINDENT) {
        message =
          "expected a rule name at column 1 " +
          "(result lines are indented by at least two spaces)";
      } else {
        message = "expected a rule name at column 1";
      }
      diagnostics.push(error("EXPECTED_RULE", message, point(i + 1, 1)));
      i = resync(i + 1);
      continue;
    }
    if (!RULE_NAMES.has(word)) {
      const suggestion = nearestRuleName(word);
      let message = `unknown rule '${word}'`;
      if (suggestion) message += ` (did you mean '${suggestion}'?)`;
      diagnostics.push(error("UNKNOWN_RULE", message, point(i + 1, 1)));
      i = resync(i + 1);
      continue;
    }

    const rule = word as Rule;
    const ruleLine = i;
    i += 1;
    const blocksNeeded = claimedCount(rule);
    const claimed: Sequent[] = [];
    let failed = false;
    if (blocksNeeded >= 1) {
      while (i < n && classes[i][0] === BLANK) i += 1;
      const [block, next] = collectBlock(i, rule);
      i = next;
      if (block === null) {
        i = resync(i);
        failed = true;
      } else {
        claimed.push(block);
      }
    }
    if (!failed && blocksNeeded === 2) {
      while (i < n && classes[i][0] === BLANK) i += 1;
      if (i < n && classes[i][0] === PLUS) {
        i += 1;
        while (i < n && classes[i][0] === BLANK) i += 1;
        const [block, next] = collectBlock(i, rule);
        i = next;
        if (block === null) {
          i = resync(i);
          failed = true;
        } else {
          claimed.push(block);
        }
      } else {
        diagnostics.push(
          error(
            "MISSING_BRANCH",
            `rule ${rule} expects two result sequents ` +
              `separated by a line containing only '+'`,
            point(Math.min(i, n - 1) + 1, 1),
          ),
        );
        i = resync(i);
        failed = true;
      }
    }
    if (failed) continue;
    const lastLine = Math.max(ruleLine + 1, i);
    steps.push({
      rule,
      claimed,
      location: {
        line: ruleLine + 1,
        col: 1,
        endLine: lastLine,
        endCol: Math.max(1, contents[lastLine - 1].length),
      },
    });
  }

  return { script: { goal, steps, trailing }, diagnostics, recovered };
}

export function validPrefix(outcome: ParseOutcome): RuleApplication[] {
  if (outcome.script === null) return [];
  const errors = outcome.diagnostics.filter((d) => d.severity === "error");
  if (errors.length === 0) return outcome.script.steps;
  const firstErrorLine = Math.min(...errors.map((d) => d.location.line));
  return outcome.script.steps.filter((s) => s.location.endLine < firstErrorLine);
}
