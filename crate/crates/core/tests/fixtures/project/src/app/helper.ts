import { interval } from 'rxjs';

export class Poller {
  start() {
    interval(1000).subscribe(() => console.log('poll'));
  }
}
