import { Component } from '@angular/core';

@Component({ selector: 'app-legacy', template: '' })
export class LegacyComponent {
  ngOnInit() {
    this.service.data$.subscribe(d => {
      this.data = d;
    });
  }
}
