import { Component } from '@angular/core';
import { Subject, takeUntil } from 'rxjs';

@Component({ selector: 'app-legacy', template: '' })
export class LegacyComponent {
  constructor() {
    this.destroy$ = new Subject();
  }

  ngOnInit() {
    this.service.data$.pipe(takeUntil(this.destroy$)).subscribe(d => {
      this.data = d;
    });
  }

  ngOnDestroy() {
    this.destroy$.next();
    this.destroy$.complete();
  }
}
