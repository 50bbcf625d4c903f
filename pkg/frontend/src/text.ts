/** Offset conversions between the schema's code-point indices and
 * JavaScript's UTF-16 string indices.
 *
 * Span extents travel as Unicode code-point offsets. JavaScript strings
 * index UTF-16 code units, so any text containing astral characters
 * (emoji, some CJK) drifts between the two; these helpers convert
 * explicitly at the DOM boundary.
 */

/** UTF-16 index of the code point at `codePointIndex`. Clamps to the
 * string's end when the index points one past the last code point. */
export function codePointToUtf16(text: string, codePointIndex: number): number {
  if (codePointIndex < 0) throw new RangeError(`negative offset ${codePointIndex}`);
  let cp = 0;
  let unit = 0;
  for (const ch of text) {
    if (cp === codePointIndex) return unit;
    cp += 1;
    unit += ch.length;
  }
  if (cp === codePointIndex) return unit;
  throw new RangeError(`code-point offset ${codePointIndex} beyond text of ${cp} code points`);
}

/** Code-point index of the UTF-16 unit at `utf16Index`; the index must
 * not fall between the halves of a surrogate pair. */
export function utf16ToCodePoint(text: string, utf16Index: number): number {
  if (utf16Index < 0) throw new RangeError(`negative offset ${utf16Index}`);
  let cp = 0;
  let unit = 0;
  for (const ch of text) {
    if (unit === utf16Index) return cp;
    if (unit > utf16Index) throw new RangeError(`offset ${utf16Index} splits a surrogate pair`);
    cp += 1;
    unit += ch.length;
  }
  if (unit === utf16Index) return cp;
  throw new RangeError(`UTF-16 offset ${utf16Index} beyond text of ${unit} units`);
}

/** Total code points in `text` (what the server calls the text length). */
export function codePointLength(text: string): number {
  let n = 0;
  for (const _ of text) n += 1;
  return n;
}

/** Slice by code-point offsets, half-open, mirroring the server's view. */
export function codePointSlice(text: string, start: number, end: number): string {
  return text.slice(codePointToUtf16(text, start), codePointToUtf16(text, end));
}
