/**
 * Demo-mode metadata for the bundled intelligence-analysis corpus: which
 * hidden plot(s) each report belongs to. Docs in several plots get several
 * rings in the scatterplot; reports known to be irrelevant get none.
 */

export const CRESCENT_PLOTS: Record<string, string[]> = {
  boston: ["cia7", "cia8", "cia9", "cia10", "cia11", "fbi1", "fbi2", "fbi21", "se3", "se4"],
  newyork: ["cia11", "fbi1", "fbi10", "fbi13", "fbi16", "fbi22", "fbi25", "se2", "se3", "se4"],
  atlanta: [
    "cia4",
    "cia11",
    "fbi1",
    "fbi7",
    "fbi11",
    "fbi15",
    "fbi17",
    "fbi19",
    "fbi20",
    "fbi24",
    "se4",
    "se5",
  ],
};

/** Ids mentioned by the ground truth without belonging to any plot. */
export const CRESCENT_IRRELEVANT: string[] = [
  "fbi3",
  "fbi4",
  "fbi5",
  "fbi6",
  "fbi8",
  "fbi9",
  "fbi14",
  "fbi18",
  "fbi23",
  "cia1",
  "cia2",
  "cia3",
  "cia5",
  "cia6",
  "se1",
];

/** doc id to the plots containing it, in stable plot order. */
export function membershipIndex(): Map<string, string[]> {
  const index = new Map<string, string[]>();
  for (const [plot, ids] of Object.entries(CRESCENT_PLOTS)) {
    for (const id of ids) {
      const plots = index.get(id);
      if (plots) plots.push(plot);
      else index.set(id, [plot]);
    }
  }
  return index;
}

/** Demo-mode switch: most of the corpus appears in the ground-truth tables. */
export function looksLikeCrescent(docIds: string[]): boolean {
  if (docIds.length === 0) return false;
  const known = new Set<string>(CRESCENT_IRRELEVANT);
  for (const ids of Object.values(CRESCENT_PLOTS)) for (const id of ids) known.add(id);
  const hits = docIds.filter((id) => known.has(id)).length;
  return hits >= docIds.length * 0.5;
}
