"use strict";
Object.defineProperty(exports, "__esModule", { value: true });
const ui_1 = require("./ui");
if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => (0, ui_1.initApp)(document));
}
else {
    (0, ui_1.initApp)(document);
}
