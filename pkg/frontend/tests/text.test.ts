import { describe, expect, it } from "vitest";

import {
  codePointLength,
  codePointSlice,
  codePointToUtf16,
  utf16ToCodePoint,
} from "../src/text.js";

// "a" + emoji (two UTF-16 units) + "b"
const MIXED = "a\u{1F600}b";

describe("code-point <-> UTF-16 conversions", () => {
  it("are the identity on plain ASCII", () => {
    const text = "Hundreds of people";
    for (const i of [0, 5, text.length]) {
      expect(codePointToUtf16(text, i)).toBe(i);
      expect(utf16ToCodePoint(text, i)).toBe(i);
    }
  });

  it("account for astral characters", () => {
    expect(codePointLength(MIXED)).toBe(3);
    expect(MIXED.length).toBe(4);
    expect(codePointToUtf16(MIXED, 0)).toBe(0);
    expect(codePointToUtf16(MIXED, 1)).toBe(1);
    expect(codePointToUtf16(MIXED, 2)).toBe(3); // emoji takes two units
    expect(codePointToUtf16(MIXED, 3)).toBe(4);
    expect(utf16ToCodePoint(MIXED, 3)).toBe(2);
    expect(utf16ToCodePoint(MIXED, 4)).toBe(3);
  });

  it("round-trips every boundary", () => {
    for (let cp = 0; cp <= codePointLength(MIXED); cp++) {
      expect(utf16ToCodePoint(MIXED, codePointToUtf16(MIXED, cp))).toBe(cp);
    }
  });

  it("rejects offsets splitting a surrogate pair or out of range", () => {
    expect(() => utf16ToCodePoint(MIXED, 2)).toThrowError(/surrogate/);
    expect(() => codePointToUtf16(MIXED, 4)).toThrowError(/beyond/);
    expect(() => codePointToUtf16(MIXED, -1)).toThrowError(/negative/);
  });

  it("slices by code points the way the server does", () => {
    expect(codePointSlice(MIXED, 1, 2)).toBe("\u{1F600}");
    expect(codePointSlice("Hundreds of people", 0, 8)).toBe("Hundreds");
  });
});
