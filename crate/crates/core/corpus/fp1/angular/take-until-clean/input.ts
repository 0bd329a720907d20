import { Component, OnDestroy, OnInit } from '@angular/core';
import { Subject } from 'rxjs';
import { takeUntil } from 'rxjs/operators';
import { Clock } from './clock';

@Component({ selector: 'app-time', template: '{{ t }}' })
export class TimeComponent implements OnInit, OnDestroy {
  t = 0;
  private readonly destroy$ = new Subject<void>();

  constructor(private clock: Clock) {}

  ngOnInit() {
    this.clock.ticks$.pipe(takeUntil(this.destroy$)).subscribe(t => (this.t = t));
  }

  ngOnDestroy() {
    this.destroy$.next();
    this.destroy$.complete();
  }
}
