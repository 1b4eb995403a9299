// Entry point: mounts the play screen and the construct screen.

import { ForgeClient } from './api.js';
import { ConstructScreen } from './constructScreen.js';
import { PlayScreen } from './playScreen.js';

const client = new ForgeClient('');

const playRoot = document.getElementById('play');
if (playRoot) {
  const screen = new PlayScreen(playRoot, client, 'interval', 'rationals_01');
  void screen.start();
}

const constructRoot = document.getElementById('construct');
if (constructRoot) {
  const screen = new ConstructScreen(constructRoot, client);
  const form = document.getElementById('construct-form') as HTMLFormElement | null;
  form?.addEventListener('submit', (event) => {
    event.preventDefault();
    const data = new FormData(form);
    void screen.run(
      String(data.get('method') ?? 'trisect'),
      String(data.get('enum') ?? 'rationals_01'),
      Number(data.get('depth') ?? 8),
    );
  });
}
