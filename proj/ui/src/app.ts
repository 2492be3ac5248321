// Mirrors a real game in the browser. Everything shown comes from the
// service; the page keeps only the tile colors being entered.

type Color = "B" | "Y" | "G";

interface Config {
  mode: string;
  length: number;
  policy: string;
  shortlist: number;
  tie_break: string;
  opener: string | null;
}

interface Suggestion {
  word: string;
  score: number;
  score_kind: string;
  q_mean: number | null;
  eligible: boolean;
  cells: number;
}

interface View {
  id: string;
  config: Config;
  history: { guess: string; pattern: string }[];
  eligible_count: number;
  solved: boolean;
  guesses_used: number;
  eligible_preview: string[];
  suggestions: Suggestion[];
  pick: string | null;
}

interface ApiError {
  error: { code: string; message: string; field?: string; violations?: string[] };
}

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;
const NEXT: Record<string, Color> = { "": "B", B: "Y", Y: "G", G: "B" };

let view: View | null = null;
let colors: (Color | "")[] = [];

class ServiceError extends Error {
  constructor(readonly status: number, readonly body: ApiError) {
    super(body.error.message);
  }
}

async function request(method: string, path: string, body?: unknown): Promise<View> {
  let res: Response;
  try {
    res = await fetch(path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  } catch {
    showBanner("Cannot reach the service. Your board is kept; try again.");
    throw new Error("network");
  }
  hideBanner();
  const json = await res.json();
  if (!res.ok) throw new ServiceError(res.status, json as ApiError);
  return json as View;
}

function showBanner(text: string) {
  const b = $("banner");
  b.textContent = text;
  b.hidden = false;
}

function hideBanner() {
  $("banner").hidden = true;
}

function setMessage(text: string, error = false) {
  const m = $("message");
  m.textContent = text;
  m.className = error ? "error" : "";
}

function tile(letter: string, color: Color | ""): HTMLDivElement {
  const t = document.createElement("div");
  t.className = "tile " + color;
  t.textContent = letter;
  return t;
}

function explain(s: Suggestion): string {
  const parts: string[] = [];
  if (s.score_kind === "mig") parts.push(`${s.score.toFixed(2)} bits expected`);
  else parts.push(`${s.score_kind} ${s.score.toFixed(3)}`);
  if (s.q_mean !== null) parts.push(`avg ${s.q_mean.toFixed(2)} more guesses`);
  parts.push(`${s.cells} color patterns`);
  return parts.join(", ");
}

function renderTiles() {
  const length = view?.config.length ?? 5;
  const letters = ($("guess") as HTMLInputElement).value.toLowerCase().padEnd(length).slice(0, length);
  if (colors.length !== length) colors = Array(length).fill("");
  const box = $("tiles");
  box.replaceChildren();
  for (let i = 0; i < length; ++i) {
    const t = tile(letters[i].trim(), colors[i]);
    t.addEventListener("click", () => {
      colors[i] = NEXT[colors[i]];
      renderTiles();
    });
    box.append(t);
  }
}

function render() {
  if (!view) return;
  const board = $("board");
  board.replaceChildren();
  for (const turn of view.history) {
    const row = document.createElement("div");
    row.className = "row";
    [...turn.guess].forEach((c, i) => row.append(tile(c, turn.pattern[i] as Color)));
    board.append(row);
  }
  ($("mode") as HTMLSelectElement).value = view.config.mode;
  ($("length") as HTMLSelectElement).value = String(view.config.length);
  ($("policy") as HTMLSelectElement).value = view.config.policy;

  const entry = $("entry") as HTMLFormElement;
  entry.hidden = view.solved;
  $("eligible").textContent = view.solved
    ? `Solved in ${view.guesses_used} guesses.`
    : `${view.eligible_count} possible answer${view.eligible_count === 1 ? "" : "s"}`;

  const body = $("suggestions").querySelector("tbody")!;
  body.replaceChildren();
  view.suggestions.forEach((s, i) => {
    const tr = document.createElement("tr");
    if (s.word === view!.pick) tr.className = "pick";
    tr.innerHTML = `<td>${i + 1}</td><td>${s.word}</td><td></td>`;
    tr.children[2].textContent = explain(s) + (s.eligible ? " " : "");
    if (s.eligible) {
      const a = document.createElement("span");
      a.className = "answer";
      a.textContent = "possible answer";
      tr.children[2].append(a);
    }
    body.append(tr);
  });
  $("remaining").textContent =
    !view.solved && view.eligible_preview.length === view.eligible_count ? view.eligible_preview.join(" ") : "";
  renderTiles();
}

async function newGame() {
  const config = {
    mode: ($("mode") as HTMLSelectElement).value,
    length: Number(($("length") as HTMLSelectElement).value),
    policy: ($("policy") as HTMLSelectElement).value,
  };
  try {
    if (view) request("DELETE", `/sessions/${view.id}`).catch(() => undefined);
    view = await request("POST", "/sessions", config);
    colors = [];
    ($("guess") as HTMLInputElement).value = "";
    setMessage("");
    render();
  } catch (e) {
    if (e instanceof ServiceError) setMessage(e.message, true);
  }
}

async function submit(event: Event) {
  event.preventDefault();
  if (!view) return;
  const input = $("guess") as HTMLInputElement;
  const guess = input.value.trim().toLowerCase();
  if (guess.length !== view.config.length) {
    setMessage(`Enter a ${view.config.length}-letter word.`, true);
    return;
  }
  if (colors.some((c) => c === "")) {
    setMessage("Tap every tile to set its color first.", true);
    return;
  }
  try {
    view = await request("POST", `/sessions/${view.id}/feedback`, { guess, pattern: colors.join("") });
    input.value = "";
    colors = [];
    setMessage("");
    render();
  } catch (e) {
    if (!(e instanceof ServiceError)) return;
    const v = e.body.error.violations;
    const extra = v && v.length ? " " + v.join("; ") : "";
    const hint = e.body.error.code === "conflict" ? " Check the colors, or undo the last row." : "";
    setMessage(e.message + extra + hint, true);
  }
}

async function undo() {
  if (!view) return;
  try {
    view = await request("POST", `/sessions/${view.id}/undo`);
    setMessage("");
    render();
  } catch (e) {
    if (e instanceof ServiceError) setMessage(e.message, true);
  }
}

function changeConfig() {
  if (view && view.history.length > 0 && !confirm("Changing settings starts a new game. Continue?")) {
    render();
    return;
  }
  newGame();
}

$("entry").addEventListener("submit", submit);
$("guess").addEventListener("input", renderTiles);
$("new-game").addEventListener("click", newGame);
$("undo").addEventListener("click", undo);
for (const id of ["mode", "length", "policy"]) $(id).addEventListener("change", changeConfig);
newGame();
