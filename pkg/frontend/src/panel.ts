import { ApiClient } from "./api.js";
import { DocumentDetail, TopWeights } from "./types.js";

/** Table of the largest learned weights with their token interpretations. */
export class WeightsPanel {
  constructor(private readonly root: HTMLElement) {}

  render(weights: TopWeights): void {
    this.root.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = "Top weights";
    this.root.appendChild(heading);
    if (weights.approximate) {
      const note = document.createElement("p");
      note.className = "approximate-note";
      note.textContent = "token mapping is approximate (hash buckets)";
      this.root.appendChild(note);
    }
    const table = document.createElement("table");
    for (const entry of weights.entries) {
      const row = table.insertRow();
      row.insertCell().textContent = `#${entry.dim}`;
      row.insertCell().textContent = entry.weight.toFixed(4);
      if (entry.tokens !== undefined) {
        row.insertCell().textContent = entry.tokens.join(", ");
      }
    }
    this.root.appendChild(table);
  }
}

/**
 * Detail view for one document. Rapid clicks race their fetches, so each
 * request takes a ticket and only the newest one may render (last wins).
 * A failed fetch renders a placeholder with a retry button.
 */
export class DocumentPanel {
  private ticket = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async show(docId: string): Promise<void> {
    const mine = ++this.ticket;
    try {
      const doc = await this.api.getDocument(docId);
      if (mine !== this.ticket) return;
      this.renderDocument(doc);
    } catch {
      if (mine !== this.ticket) return;
      this.renderRetry(docId);
    }
  }

  clear(): void {
    this.ticket++;
    this.root.replaceChildren();
  }

  private renderDocument(doc: DocumentDetail): void {
    this.root.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = doc.id;
    this.root.appendChild(heading);
    if (doc.label !== undefined) {
      const label = document.createElement("p");
      label.className = "doc-label";
      label.textContent = doc.label;
      this.root.appendChild(label);
    }
    const text = document.createElement("pre");
    text.className = "doc-text";
    text.textContent = doc.text;
    this.root.appendChild(text);
  }

  private renderRetry(docId: string): void {
    this.root.replaceChildren();
    const message = document.createElement("p");
    message.className = "fetch-failed";
    message.textContent = `could not load ${docId}`;
    this.root.appendChild(message);
    const retry = document.createElement("button");
    retry.className = "retry";
    retry.textContent = "retry";
    retry.addEventListener("click", () => void this.show(docId));
    this.root.appendChild(retry);
  }
}

/** One-line status strip for validation hints and server errors. */
export class Banner {
  constructor(private readonly root: HTMLElement) {}

  show(kind: "error" | "info", message: string): void {
    this.root.textContent = message;
    this.root.className = `banner ${kind}`;
    this.root.style.display = "block";
  }

  clear(): void {
    this.root.textContent = "";
    this.root.className = "banner";
    this.root.style.display = "none";
  }
}
