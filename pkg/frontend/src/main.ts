import { initApp } from "./ui";

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", () => initApp(document));
} else {
  initApp(document);
}
