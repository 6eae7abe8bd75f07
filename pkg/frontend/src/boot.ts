import { Api } from "./api.js";
import { mountApp } from "./main.js";

const root = document.getElementById("app");
if (root) {
  void mountApp(root, new Api(), window.sessionStorage);
}
