import { beforeEach, describe, expect, it } from "vitest";
import { parseCellValue, renderTraceLines, renderTraceTable } from "../src/table.js";
import { threadColor } from "../src/palette.js";
import type { Answers, ExerciseView, SelectionResponse } from "../src/types.js";
import viewJson from "./fixtures/exercise-view.json";
import selectionWrongJson from "./fixtures/selection-wrong.json";

const view = viewJson as unknown as ExerciseView;
const layout = view.layout!;
const selectionWrong = selectionWrongJson as unknown as SelectionResponse;

function blankAnswers(): Answers {
  const cells: Record<number, number | null> = {};
  for (const row of view.fill_in.rows) cells[row] = null;
  return { c: cells };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("palette", () => {
  it("names main yellow, the first spawned thread green, then distinct hues", () => {
    expect(threadColor(0)).toBe("#f5d547");
    expect(threadColor(1)).toBe("#79c96d");
    const extra = [threadColor(2), threadColor(3), threadColor(4)];
    for (const color of extra) expect(color).toMatch(/^hsl\(/);
    expect(new Set(extra).size).toBe(3);
  });
});

describe("enhanced trace table", () => {
  it("renders the counter fixture to a stable golden DOM", () => {
    const first = renderTraceTable(layout, {
      inputs: { variables: view.fill_in.variables, rows: view.fill_in.rows, values: blankAnswers() },
    });
    const second = renderTraceTable(layout, {
      inputs: { variables: view.fill_in.variables, rows: view.fill_in.rows, values: blankAnswers() },
    });
    expect(second.outerHTML).toBe(first.outerHTML); // deterministic render
    expect(first.outerHTML).toMatchSnapshot();
  });

  it("places every box by its grid geometry", () => {
    const table = renderTraceTable(layout, {});
    const boxes = table.querySelectorAll<HTMLElement>(".tt-box");
    expect(boxes.length).toBe(layout.boxes.length);
    layout.boxes.forEach((box, i) => {
      const node = boxes[i]!;
      expect(node.style.gridRow).toBe(`${box.start_row} / ${box.end_row + 1}`);
      expect(node.dataset.thread).toBe(box.thread);
      expect(node.style.getPropertyValue("--depth")).toBe(String(box.depth));
      expect(node.style.getPropertyValue("--thread-color")).toBe(threadColor(box.color_index));
      expect(node.classList.contains("tt-root")).toBe(box.synthetic);
    });
  });

  it("shows the three root spans of the counter fixture", () => {
    const table = renderTraceTable(layout, {});
    const roots = [...table.querySelectorAll<HTMLElement>(".tt-root")];
    const spans = roots.map((r) => [r.dataset.thread, r.style.gridRow]);
    expect(spans).toEqual([
      ["main", "1 / 6"],
      ["thread-1", "6 / 18"],
      ["thread-2", "8 / 26"],
    ]);
    expect(roots.map((r) => r.textContent)).toEqual(["main()", "run()", "run()"]);
  });

  it("numbers all rows and marks the replay row red", () => {
    const table = renderTraceTable(layout, { markedRow: 7 });
    const nums = table.querySelectorAll(".tt-rownum");
    expect(nums.length).toBe(layout.row_count);
    expect(table.querySelector('.tt-rownum[data-row="7"]')!.classList.contains("marked")).toBe(true);
    const markedBox = table.querySelector<HTMLElement>(".tt-box.marked");
    expect(markedBox?.dataset.row).toBe("7");
    expect(markedBox?.textContent).toBe("c++");
  });

  it("aligns one value field with every input row", () => {
    const table = renderTraceTable(layout, {
      inputs: { variables: ["c"], rows: view.fill_in.rows, values: blankAnswers() },
    });
    const fields = [...table.querySelectorAll<HTMLInputElement>("input.tt-value")];
    expect(fields.length).toBe(layout.input_rows.length);
    expect(fields.map((f) => Number(f.dataset.row))).toEqual(layout.input_rows);
    expect(fields.every((f) => f.dataset.var === "c")).toBe(true);
  });

  it("blocks non-integer input client-side", () => {
    expect(parseCellValue("12")).toEqual({ cleaned: "12", value: 12 });
    expect(parseCellValue("-3")).toEqual({ cleaned: "-3", value: -3 });
    expect(parseCellValue("abc")).toEqual({ cleaned: "", value: null });
    expect(parseCellValue("1a2")).toEqual({ cleaned: "12", value: 12 });
    expect(parseCellValue("2-3")).toEqual({ cleaned: "23", value: 23 });
    expect(parseCellValue("")).toEqual({ cleaned: "", value: null });
    expect(parseCellValue("-")).toEqual({ cleaned: "-", value: null });

    const edits: Array<[string, number, number | null]> = [];
    const table = renderTraceTable(layout, {
      inputs: { variables: ["c"], rows: [1, 2], values: blankAnswers() },
      onInput: (variable, row, value) => edits.push([variable, row, value]),
    });
    document.body.appendChild(table);
    const field = table.querySelector<HTMLInputElement>('input[data-row="1"]')!;
    field.value = "4x";
    field.dispatchEvent(new Event("input", { bubbles: true }));
    expect(field.value).toBe("4");
    expect(edits).toEqual([["c", 1, 4]]);
  });

  it("paints wrong cells red and emphasizes hint rows", () => {
    const values = blankAnswers();
    values["c"]![9] = 3;
    const table = renderTraceTable(layout, {
      inputs: { variables: ["c"], rows: view.fill_in.rows, values },
      cellVerdicts: { c: { 9: false, 10: false, 11: false, 1: true } },
      hintRows: [1, 7, 9, 14, 22],
      readOnly: true,
    });
    const wrong = [...table.querySelectorAll<HTMLElement>(".tt-value-cell.wrong input")];
    expect(wrong.map((f) => f.dataset.row)).toEqual(["9", "10", "11"]);
    const hinted = [...table.querySelectorAll<HTMLElement>(".tt-rownum.hint")];
    expect(hinted.map((n) => n.dataset.row)).toEqual(["1", "7", "9", "14", "22"]);
    const fields = [...table.querySelectorAll<HTMLInputElement>("input.tt-value")];
    expect(fields.every((f) => f.disabled)).toBe(true);
    expect(table.querySelector<HTMLInputElement>('input[data-row="9"]')!.value).toBe("3");
  });
});

describe("plain trace rows", () => {
  it("renders one line per row and marks the cursor row", () => {
    const rows = selectionWrong.replay.rows;
    const list = renderTraceLines(rows, 3);
    const lines = [...list.querySelectorAll<HTMLElement>(".tl-line")];
    expect(lines.length).toBe(rows.length);
    expect(lines[0]!.textContent).toBe(`[${rows[0]!.thread}] ${rows[0]!.text}`);
    expect(lines[2]!.classList.contains("marked")).toBe(true);
  });
});
