// Embedded check endpoint: the same JSON schema the local service speaks,
// computed entirely in the page so the tool works offline.

import {
  Diagnostic,
  ProofState,
  RULE_ORDER,
  applicableRules,
  initialState,
  runSteps,
} from "./calculus";
import { parseScript, validPrefix } from "./parser";
import { printSequent } from "./printer";

export const DEFAULT_SIZE_LIMIT = 256 * 1024;

export type CheckMode = "full" | "prefix";

export interface DiagnosticPayload {
  code: string;
  severity: string;
  message: string;
  line: number;
  col: number;
  expected?: string;
  got?: string;
}

export interface GoalPayload {
  branch: number;
  sequent: string;
}

export interface CheckResponse {
  status: "complete" | "incomplete" | "invalid" | "parse_error";
  open_goals: GoalPayload[];
  diagnostics: DiagnosticPayload[];
  applicable: string[];
  steps_validated: number;
}

function diagnosticPayload(d: Diagnostic): DiagnosticPayload {
  const payload: DiagnosticPayload = {
    code: d.code,
    severity: d.severity,
    message: d.message,
    line: d.location.line,
    col: d.location.col,
  };
  if (d.expected !== undefined) payload.expected = d.expected;
  if (d.got !== undefined) payload.got = d.got;
  return payload;
}

function applicableNames(state: ProofState): string[] {
  if (state.openGoals.length === 0) return [];
  const goal = state.openGoals[0][1];
  let rules: Set<string>;
  try {
    rules = applicableRules(goal);
  } catch {
    return [];
  }
  return RULE_ORDER.filter((r) => rules.has(r));
}

function goalsPayload(state: ProofState): GoalPayload[] {
  return state.openGoals.map(([branch, goal]) => ({
    branch,
    sequent: printSequent(goal),
  }));
}

export function handleCheck(
  scriptText: string,
  mode: CheckMode = "full",
  sizeLimit: number = DEFAULT_SIZE_LIMIT,
): CheckResponse {
  if (new TextEncoder().encode(scriptText).length > sizeLimit) {
    return {
      status: "parse_error",
      open_goals: [],
      diagnostics: [
        {
          code: "BODY_TOO_LARGE",
          severity: "error",
          message: `script text exceeds the ${sizeLimit} byte limit`,
          line: 1,
          col: 1,
        },
      ],
      applicable: [],
      steps_validated: 0,
    };
  }

  const outcome = parseScript(scriptText);
  const parseDiags = outcome.diagnostics;
  const hasParseErrors = parseDiags.some((d) => d.severity === "error");

  if (outcome.script === null) {
    return {
      status: "parse_error",
      open_goals: [],
      diagnostics: parseDiags.map(diagnosticPayload),
      applicable: [],
      steps_validated: 0,
    };
  }

  if (mode === "full") {
    if (hasParseErrors) {
      return {
        status: "parse_error",
        open_goals: [],
        diagnostics: parseDiags.map(diagnosticPayload),
        applicable: [],
        steps_validated: 0,
      };
    }
    const result = runSteps(initialState(outcome.script.goal), outcome.script.steps);
    if (result.failure !== null) {
      return {
        status: "invalid",
        open_goals: [],
        diagnostics: result.failure[1].map(diagnosticPayload),
        applicable: [],
        steps_validated: result.stepsValidated,
      };
    }
    const status = result.state.openGoals.length === 0 ? "complete" : "incomplete";
    return {
      status,
      open_goals: goalsPayload(result.state),
      diagnostics: [],
      applicable: applicableNames(result.state),
      steps_validated: result.stepsValidated,
    };
  }

  const steps = validPrefix(outcome);
  const result = runSteps(initialState(outcome.script.goal), steps);
  const diagnostics = [...parseDiags];
  if (result.failure !== null) diagnostics.push(...result.failure[1]);
  const hasErrors = diagnostics.some((d) => d.severity === "error");
  let status: CheckResponse["status"];
  if (hasErrors) {
    status = "invalid";
  } else if (result.state.openGoals.length === 0) {
    status = "complete";
  } else {
    status = "incomplete";
  }
  return {
    status,
    open_goals: goalsPayload(result.state),
    diagnostics: diagnostics.map(diagnosticPayload),
    applicable: applicableNames(result.state),
    steps_validated: result.stepsValidated,
  };
}
